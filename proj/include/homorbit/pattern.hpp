#ifndef HOMORBIT_PATTERN_HPP
#define HOMORBIT_PATTERN_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homorbit {

// k!-scale searches (automorphisms, orientations, LIPCO) stay cheap up to
// here; raising the limit is allowed but costs factorially.
inline constexpr int kDefaultMaxPatternVertices = 8;
// Adjacency rows are 16-bit masks.
inline constexpr int kHardMaxPatternVertices = 16;

// Small connected simple pattern graph H.
class Pattern {
public:
    Pattern() = default;

    // Normalizes and deduplicates edges, then validates: simple, connected,
    // k <= max_vertices. Throws pattern_too_large or invalid_pattern.
    static Pattern from_edges(int k, std::vector<std::pair<int, int>> edges,
                              int max_vertices = kDefaultMaxPatternVertices);

    int vertex_count() const noexcept { return k_; }
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
    std::uint16_t adjacency_mask(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    bool has_edge(int u, int v) const { return (adj_[static_cast<std::size_t>(u)] >> v) & 1; }
    int degree(int v) const { return __builtin_popcount(adj_[static_cast<std::size_t>(v)]); }

    bool operator==(const Pattern& other) const {
        return k_ == other.k_ && edges_ == other.edges_;
    }

private:
    int k_ = 0;
    std::vector<std::pair<int, int>> edges_;  // u < v, sorted
    std::vector<std::uint16_t> adj_;
};

// Same edge-list text format as graphs.
Pattern parse_pattern(std::string_view text, int max_vertices = kDefaultMaxPatternVertices);
Pattern read_pattern_file(const std::string& path,
                          int max_vertices = kDefaultMaxPatternVertices);

struct OrbitPartition {
    std::vector<std::vector<int>> orbits;  // each sorted; ordered by smallest member
    std::vector<int> orbit_of;             // vertex -> index into orbits

    std::vector<int> representatives() const {
        std::vector<int> reps;
        reps.reserve(orbits.size());
        for (const auto& o : orbits) reps.push_back(o.front());
        return reps;
    }
};

// Exhausts all k! permutations, keeps the edge-preserving ones, and takes
// connected components of the mapped-to-each-other relation.
OrbitPartition automorphism_orbits(const Pattern& h);

// Length in edges of the longest chordless cycle; 0 when H is acyclic.
int licl(const Pattern& h);

// Longest induced path between two same-orbit vertices, the coinciding
// endpoint case degenerating to the longest induced cycle. Length in edges.
int lipco(const Pattern& h);

enum class Verdict { linear, conjecturally_hard };

inline Verdict dichotomy_verdict(int lipco_value) {
    return lipco_value <= 5 ? Verdict::linear : Verdict::conjecturally_hard;
}

Verdict dichotomy_verdict(const Pattern& h);
std::string_view to_string(Verdict v);

// IS(psi): every nonempty independent S subseteq psi, ordered by size then
// lexicographically.
std::vector<std::vector<int>> orbit_independent_sets(const Pattern& h,
                                                     const std::vector<int>& psi);

struct MergedPattern {
    Pattern base;                 // H_S, densely re-indexed
    int merged_vertex = 0;        // h_S in the new labeling
    std::vector<int> source_set;  // S, original labels
    int sign = 1;                 // (-1)^(|S|+1)
};

// Identifies S into a single vertex and drops duplicate edges. S must be
// nonempty and independent (invalid_merge_set otherwise). Surviving vertices
// keep their relative order; h_S takes the slot of min(S).
MergedPattern merge_pattern(const Pattern& h, const std::vector<int>& s);

// Acyclic orientation of a pattern.
class DagPattern {
public:
    DagPattern() = default;
    // Throws invalid_pattern if the arc set has a directed cycle.
    DagPattern(int k, std::vector<std::pair<int, int>> arcs);

    int vertex_count() const noexcept { return k_; }
    const std::vector<std::pair<int, int>>& arcs() const noexcept { return arcs_; }
    std::uint16_t out_mask(int v) const { return out_[static_cast<std::size_t>(v)]; }
    std::uint16_t in_mask(int v) const { return in_[static_cast<std::size_t>(v)]; }
    bool has_arc(int u, int v) const { return (out_[static_cast<std::size_t>(u)] >> v) & 1; }

    bool operator==(const DagPattern& other) const {
        return k_ == other.k_ && arcs_ == other.arcs_;
    }

private:
    int k_ = 0;
    std::vector<std::pair<int, int>> arcs_;  // sorted
    std::vector<std::uint16_t> out_, in_;
};

// Sigma(H): all acyclic orientations, deduplicated by the edge-direction bit
// vector, in a deterministic order.
std::vector<DagPattern> acyclic_orientations(const Pattern& h);

struct IsoClass {
    std::vector<std::size_t> members;  // indices into the input list
    long long signed_tally = 0;
};

// Groups isomorphic patterns; signs default to +1 each. Classes are ordered
// by first occurrence.
std::vector<IsoClass> isomorphism_classes(const std::vector<Pattern>& patterns,
                                          const std::vector<int>& signs = {});

bool isomorphic(const Pattern& a, const Pattern& b);

struct CanonicalForm {
    Pattern pattern;
    std::vector<int> relabel;  // relabel[v] = canonical id of v
    int mark = -1;             // canonical id of the marked vertex, -1 if unmarked
};

// Lexicographically smallest relabeling over all k! permutations; when a
// vertex is marked, its canonical id is minimized as a tiebreaker, so two
// marked patterns share a canonical form iff some isomorphism maps mark to
// mark.
CanonicalForm canonical_form(const Pattern& h, int marked_vertex = -1);

} // namespace homorbit

#endif
