#ifndef HOMORBIT_COUNTING_HPP
#define HOMORBIT_COUNTING_HPP

#include "homorbit/decomposition.hpp"
#include "homorbit/graph.hpp"
#include "homorbit/pattern.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace homorbit {

// Image of a bag homomorphism: graph vertices indexed by a fixed ordering of
// the bag's pattern vertices.
struct HomKey {
    std::uint8_t size = 0;
    std::array<VertexId, kHardMaxPatternVertices> image{};

    bool operator==(const HomKey& other) const {
        if (size != other.size) return false;
        for (std::uint8_t i = 0; i < size; ++i)
            if (image[i] != other.image[i]) return false;
        return true;
    }
};

struct HomKeyHash {
    std::size_t operator()(const HomKey& key) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull ^ key.size;
        for (std::uint8_t i = 0; i < key.size; ++i) {
            h ^= key.image[i] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 0xBF58476D1CE4E5B9ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

// Exact counts per (pattern vertex, graph vertex), row-major by pattern
// vertex.
struct VertexHomTable {
    int pattern_vertex_count = 0;
    VertexId graph_vertex_count = 0;
    std::vector<std::uint64_t> counts;

    VertexHomTable() = default;
    VertexHomTable(int k, VertexId n)
        : pattern_vertex_count(k),
          graph_vertex_count(n),
          counts(static_cast<std::size_t>(k) * n, 0) {}

    std::uint64_t at(int h, VertexId v) const {
        return counts[static_cast<std::size_t>(h) * graph_vertex_count + v];
    }
    std::span<const std::uint64_t> row(int h) const {
        return {counts.data() + static_cast<std::size_t>(h) * graph_vertex_count,
                graph_vertex_count};
    }
    std::span<std::uint64_t> row(int h) {
        return {counts.data() + static_cast<std::size_t>(h) * graph_vertex_count,
                graph_vertex_count};
    }

    bool operator==(const VertexHomTable&) const = default;
};

// Exact counts per (orbit, graph vertex); orbits are identified by their
// smallest pattern vertex.
struct OrbitHomTable {
    std::vector<int> orbit_representatives;
    VertexId graph_vertex_count = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t at(std::size_t orbit, VertexId v) const {
        return counts[orbit * graph_vertex_count + v];
    }
    std::span<const std::uint64_t> row(std::size_t orbit) const {
        return {counts.data() + orbit * graph_vertex_count, graph_vertex_count};
    }
    std::span<std::uint64_t> row(std::size_t orbit) {
        return {counts.data() + orbit * graph_vertex_count, graph_vertex_count};
    }

    bool operator==(const OrbitHomTable&) const = default;
};

struct CountOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Fixed enumeration order of the pattern vertices of P[{source}]: a
// topological order starting at the source, so every later vertex has an
// already-placed in-neighbor.
std::vector<int> bag_vertex_order(const DagPattern& p, int source);

// Emits every homomorphism of P[{source}] into g. The image spans follow
// bag_vertex_order(p, source).
void for_each_bag_homomorphism(
    const DagPattern& p, int source, const OrientedGraph& g,
    const std::function<void(std::span<const VertexId>)>& emit);

std::vector<HomKey> enumerate_bag_homomorphisms(const DagPattern& p, int source,
                                                const OrientedGraph& g);

// Dictionary of extension counts for the root bag of a rooted width-1
// decomposition: for every homomorphism phi of P[B] it stores the number of
// homomorphisms of P[down(B)] extending phi. Zero-extension keys are absent.
struct ExtensionDictionary {
    int bag_source = -1;
    std::vector<int> bag_vertex_order;  // pattern ids, topological
    std::vector<int> down_set;          // Reach(down(B)), sorted pattern ids
    std::unordered_map<HomKey, std::uint64_t, HomKeyHash> ext;
};

ExtensionDictionary build_extension_dictionary(const DagPattern& p,
                                               const DagTreeDecomposition& t,
                                               const OrientedGraph& g);

// Per-vertex counts for a single acyclic orientation: re-roots the width-1
// decomposition at every bag and partitions the root-bag homomorphisms by
// the image of each not-yet-updated pattern vertex.
VertexHomTable vertex_homs_for_orientation(const DagPattern& p, const OrientedGraph& g);

// VertexHom over all acyclic orientations of H on the degeneracy orientation
// of g. Requires licl(h) <= 5 (dichotomy_violation otherwise).
VertexHomTable vertex_homs(const Pattern& h, const Graph& g,
                           const CountOptions& options = {});

// OrbitHom via the inclusion-exclusion over independent sets inside each
// orbit. Requires lipco(h) <= 5 (dichotomy_violation otherwise).
OrbitHomTable orbit_homs(const Pattern& h, const Graph& g,
                         const CountOptions& options = {});

// Agg: total orbit count over all graph vertices.
std::uint64_t aggregate(const OrbitHomTable& t, std::size_t orbit_index);

// TSV: header "vertex\torbit_rep\tcount", one row per (vertex, orbit),
// sorted by (vertex, orbit representative).
void write_orbit_tsv(std::ostream& os, const OrbitHomTable& t);

namespace detail {
struct CountPlanImpl;
}

// Graph-independent preprocessing for one pattern: orbits, the merged
// patterns deduplicated by mark-preserving isomorphism with their signed
// multiplicities, and per-orientation decompositions. Build once, count on
// many graphs.
struct OrbitCountPlan {
    Pattern pattern;
    OrbitPartition orbits;
    int lipco_value = 0;
    std::shared_ptr<const detail::CountPlanImpl> impl;
};

OrbitCountPlan build_count_plan(const Pattern& h);

struct CountResult {
    OrbitHomTable orbit;
    VertexHomTable vertex;  // VertexHom of H itself
    std::uint64_t hom_total = 0;
    VertexId kappa = 0;
};

CountResult count_orbits(const OrbitCountPlan& plan, const Graph& g,
                         const CountOptions& options = {});
CountResult count_orbits(const Pattern& h, const Graph& g,
                         const CountOptions& options = {});

} // namespace homorbit

#endif
