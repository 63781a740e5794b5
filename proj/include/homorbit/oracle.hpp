#ifndef HOMORBIT_ORACLE_HPP
#define HOMORBIT_ORACLE_HPP

#include "homorbit/counting.hpp"
#include "homorbit/errors.hpp"
#include "homorbit/graph.hpp"
#include "homorbit/pattern.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace homorbit {

// Hard preflight estimate on the n^k candidate-map space; not a timeout.
inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

// Throws budget_exceeded when n^k > budget.
void check_oracle_budget(int k, VertexId n, std::uint64_t budget);

namespace oracle_detail {

// Pattern vertices in a connectivity-respecting order: after the first, each
// vertex has at least one earlier neighbor, which prunes partial maps early.
std::vector<int> enumeration_order(int k, const std::vector<std::uint16_t>& adj);

inline std::uint64_t full_mask(VertexId n) {
    return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

template <class Fn>
void extend(const std::vector<int>& order, const std::vector<std::uint16_t>& adj,
            const Graph& g, std::array<VertexId, kHardMaxPatternVertices>& image,
            std::size_t depth, Fn& fn) {
    if (depth == order.size()) {
        fn(std::span<const VertexId>(image.data(), order.size()));
        return;
    }
    int pv = order[depth];
    // Candidates: common neighbors of the already-placed pattern neighbors.
    int anchor = -1;
    for (std::size_t i = 0; i < depth; ++i)
        if ((adj[static_cast<std::size_t>(pv)] >> order[i]) & 1) {
            if (anchor < 0 ||
                g.degree(image[static_cast<std::size_t>(anchor)]) >
                    g.degree(image[i]))
                anchor = static_cast<int>(i);
        }
    auto try_candidate = [&](VertexId x) {
        for (std::size_t i = 0; i < depth; ++i) {
            if (static_cast<int>(i) == anchor) continue;
            if (!((adj[static_cast<std::size_t>(pv)] >> order[i]) & 1)) continue;
            if (!g.has_edge(image[i], x)) return;
        }
        image[depth] = x;
        extend(order, adj, g, image, depth + 1, fn);
    };
    if (anchor >= 0)
        for (VertexId x : g.neighbors(image[static_cast<std::size_t>(anchor)]))
            try_candidate(x);
    else
        for (VertexId x = 0; x < g.vertex_count(); ++x) try_candidate(x);
}

// Bitset fast path for n <= 64: candidate sets are single-word intersections
// of neighbor rows.
template <class Fn>
void extend_bitset(const std::vector<int>& order, const std::vector<std::uint16_t>& adj,
                   const std::vector<std::uint64_t>& rows, std::uint64_t all,
                   std::array<VertexId, kHardMaxPatternVertices>& image,
                   std::size_t depth, Fn& fn) {
    if (depth == order.size()) {
        fn(std::span<const VertexId>(image.data(), order.size()));
        return;
    }
    int pv = order[depth];
    std::uint64_t candidates = all;
    for (std::size_t i = 0; i < depth; ++i)
        if ((adj[static_cast<std::size_t>(pv)] >> order[i]) & 1)
            candidates &= rows[image[i]];
    while (candidates) {
        VertexId x = static_cast<VertexId>(__builtin_ctzll(candidates));
        candidates &= candidates - 1;
        image[depth] = x;
        extend_bitset(order, adj, rows, all, image, depth + 1, fn);
    }
}

} // namespace oracle_detail

// Enumerates every homomorphism of h into g by backtracking. The image spans
// the pattern vertices in their natural order 0..k-1.
template <class Fn>
void for_each_homomorphism(const Pattern& h, const Graph& g, Fn&& fn,
                           std::uint64_t budget = kDefaultOracleBudget) {
    check_oracle_budget(h.vertex_count(), g.vertex_count(), budget);
    const int k = h.vertex_count();
    std::vector<std::uint16_t> adj(static_cast<std::size_t>(k));
    for (int v = 0; v < k; ++v) adj[static_cast<std::size_t>(v)] = h.adjacency_mask(v);
    std::vector<int> order = oracle_detail::enumeration_order(k, adj);
    std::array<VertexId, kHardMaxPatternVertices> slot{};
    std::array<VertexId, kHardMaxPatternVertices> by_vertex{};
    auto reorder = [&](std::span<const VertexId> image) {
        for (std::size_t i = 0; i < order.size(); ++i)
            by_vertex[static_cast<std::size_t>(order[i])] = image[i];
        fn(std::span<const VertexId>(by_vertex.data(), order.size()));
    };
    const VertexId n = g.vertex_count();
    if (n <= 64) {
        std::vector<std::uint64_t> rows(n, 0);
        for (VertexId v = 0; v < n; ++v)
            for (VertexId u : g.neighbors(v)) rows[v] |= 1ull << u;
        oracle_detail::extend_bitset(order, adj, rows, oracle_detail::full_mask(n), slot,
                                     0, reorder);
    } else {
        oracle_detail::extend(order, adj, g, slot, 0, reorder);
    }
}

// Exhaustive counts straight from the definitions.
std::uint64_t oracle_hom(const Pattern& h, const Graph& g,
                         std::uint64_t budget = kDefaultOracleBudget);
std::uint64_t oracle_hom(const DagPattern& p, const OrientedGraph& g,
                         std::uint64_t budget = kDefaultOracleBudget);
VertexHomTable oracle_vertex_homs(const Pattern& h, const Graph& g,
                                  std::uint64_t budget = kDefaultOracleBudget);
OrbitHomTable oracle_orbit_homs(const Pattern& h, const Graph& g,
                                std::uint64_t budget = kDefaultOracleBudget);

// Number of homomorphisms mapping every vertex of S to v (Claim-5.8 style
// ground truth for merged patterns).
std::uint64_t oracle_count_mapping_all(const Pattern& h, const Graph& g,
                                       const std::vector<int>& s, VertexId v,
                                       std::uint64_t budget = kDefaultOracleBudget);

// Histogram over signatures: for each nonempty S, the number of
// homomorphisms whose orbit-psi vertices mapped to v are exactly S.
std::map<std::vector<int>, std::uint64_t> oracle_signature_histogram(
    const Pattern& h, const Graph& g, const std::vector<int>& psi, VertexId v,
    std::uint64_t budget = kDefaultOracleBudget);

} // namespace homorbit

#endif
