#include "homorbit/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace homorbit {

void check_oracle_budget(int k, VertexId n, std::uint64_t budget) {
    std::uint64_t needed = 1;
    for (int i = 0; i < k; ++i) {
        if (n != 0 && needed > budget / n) throw budget_exceeded(budget + 1, budget);
        needed *= n;
    }
    if (needed > budget) throw budget_exceeded(needed, budget);
}

namespace oracle_detail {

std::vector<int> enumeration_order(int k, const std::vector<std::uint16_t>& adj) {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(k));
    std::uint16_t placed = 0;
    auto popcount = [](std::uint16_t m) { return __builtin_popcount(m); };
    // Start from a max-degree vertex, then greedily take the vertex with the
    // most placed neighbors.
    int first = 0;
    for (int v = 1; v < k; ++v)
        if (popcount(adj[static_cast<std::size_t>(v)]) >
            popcount(adj[static_cast<std::size_t>(first)]))
            first = v;
    order.push_back(first);
    placed = static_cast<std::uint16_t>(1u << first);
    while (static_cast<int>(order.size()) < k) {
        int best = -1, best_links = -1, best_deg = -1;
        for (int v = 0; v < k; ++v) {
            if ((placed >> v) & 1) continue;
            int links = popcount(static_cast<std::uint16_t>(adj[static_cast<std::size_t>(v)] & placed));
            int deg = popcount(adj[static_cast<std::size_t>(v)]);
            if (links > best_links || (links == best_links && deg > best_deg)) {
                best = v;
                best_links = links;
                best_deg = deg;
            }
        }
        order.push_back(best);
        placed = static_cast<std::uint16_t>(placed | (1u << best));
    }
    return order;
}

} // namespace oracle_detail

std::uint64_t oracle_hom(const Pattern& h, const Graph& g, std::uint64_t budget) {
    std::uint64_t count = 0;
    for_each_homomorphism(h, g, [&](std::span<const VertexId>) { ++count; }, budget);
    return count;
}

std::uint64_t oracle_hom(const DagPattern& p, const OrientedGraph& g, std::uint64_t budget) {
    const int k = p.vertex_count();
    check_oracle_budget(k, g.vertex_count(), budget);
    // Underlying-connectivity order over the undirected skeleton.
    std::vector<std::uint16_t> skel(static_cast<std::size_t>(k));
    for (int v = 0; v < k; ++v)
        skel[static_cast<std::size_t>(v)] =
            static_cast<std::uint16_t>(p.out_mask(v) | p.in_mask(v));
    std::vector<int> order = oracle_detail::enumeration_order(k, skel);

    const VertexId n = g.vertex_count();
    if (n <= 64) {
        // Candidate sets as single-word intersections of successor and
        // predecessor rows.
        std::vector<std::uint64_t> succ(n, 0), pred(n, 0);
        for (VertexId v = 0; v < n; ++v)
            for (VertexId u : g.out_neighbors(v)) {
                succ[v] |= 1ull << u;
                pred[u] |= 1ull << v;
            }
        std::uint64_t all = oracle_detail::full_mask(n);
        std::uint64_t count = 0;
        std::array<VertexId, kHardMaxPatternVertices> image{};
        auto recurse = [&](auto&& self, int depth) -> void {
            if (depth == k) {
                ++count;
                return;
            }
            int pv = order[static_cast<std::size_t>(depth)];
            std::uint64_t candidates = all;
            for (int i = 0; i < depth; ++i) {
                int pu = order[static_cast<std::size_t>(i)];
                if (p.has_arc(pu, pv)) candidates &= succ[image[static_cast<std::size_t>(i)]];
                if (p.has_arc(pv, pu)) candidates &= pred[image[static_cast<std::size_t>(i)]];
            }
            while (candidates) {
                image[static_cast<std::size_t>(depth)] =
                    static_cast<VertexId>(__builtin_ctzll(candidates));
                candidates &= candidates - 1;
                self(self, depth + 1);
            }
        };
        recurse(recurse, 0);
        return count;
    }

    std::uint64_t count = 0;
    std::vector<VertexId> image(static_cast<std::size_t>(k));
    auto consistent = [&](int depth, VertexId x) {
        int pv = order[static_cast<std::size_t>(depth)];
        for (int i = 0; i < depth; ++i) {
            int pu = order[static_cast<std::size_t>(i)];
            if (p.has_arc(pu, pv) && !g.has_arc(image[static_cast<std::size_t>(i)], x)) return false;
            if (p.has_arc(pv, pu) && !g.has_arc(x, image[static_cast<std::size_t>(i)])) return false;
        }
        return true;
    };
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            ++count;
            return;
        }
        int pv = order[static_cast<std::size_t>(depth)];
        // When some placed in-neighbor exists, its out list bounds the
        // candidates; otherwise scan all vertices.
        int anchor = -1;
        for (int i = 0; i < depth; ++i)
            if (p.has_arc(order[static_cast<std::size_t>(i)], pv)) {
                if (anchor < 0 || g.outdegree(image[static_cast<std::size_t>(i)]) <
                                      g.outdegree(image[static_cast<std::size_t>(anchor)]))
                    anchor = i;
            }
        if (anchor >= 0) {
            for (VertexId x : g.out_neighbors(image[static_cast<std::size_t>(anchor)]))
                if (consistent(depth, x)) {
                    image[static_cast<std::size_t>(depth)] = x;
                    self(self, depth + 1);
                }
        } else {
            for (VertexId x = 0; x < g.vertex_count(); ++x)
                if (consistent(depth, x)) {
                    image[static_cast<std::size_t>(depth)] = x;
                    self(self, depth + 1);
                }
        }
    };
    recurse(recurse, 0);
    return count;
}

VertexHomTable oracle_vertex_homs(const Pattern& h, const Graph& g, std::uint64_t budget) {
    VertexHomTable table(h.vertex_count(), g.vertex_count());
    for_each_homomorphism(
        h, g,
        [&](std::span<const VertexId> image) {
            for (int v = 0; v < h.vertex_count(); ++v) {
                std::uint64_t& slot = table.row(v)[image[static_cast<std::size_t>(v)]];
                slot = checked_add(slot, 1);
            }
        },
        budget);
    return table;
}

OrbitHomTable oracle_orbit_homs(const Pattern& h, const Graph& g, std::uint64_t budget) {
    OrbitPartition orbits = automorphism_orbits(h);
    OrbitHomTable table;
    table.orbit_representatives = orbits.representatives();
    table.graph_vertex_count = g.vertex_count();
    table.counts.assign(orbits.orbits.size() * static_cast<std::size_t>(g.vertex_count()), 0);
    for_each_homomorphism(
        h, g,
        [&](std::span<const VertexId> image) {
            for (std::size_t oi = 0; oi < orbits.orbits.size(); ++oi) {
                // Each homomorphism counts once per distinct graph vertex it
                // touches within the orbit.
                std::array<VertexId, kHardMaxPatternVertices> touched{};
                std::size_t touched_count = 0;
                for (int hvert : orbits.orbits[oi]) {
                    VertexId v = image[static_cast<std::size_t>(hvert)];
                    bool seen = false;
                    for (std::size_t i = 0; i < touched_count; ++i)
                        if (touched[i] == v) {
                            seen = true;
                            break;
                        }
                    if (seen) continue;
                    touched[touched_count++] = v;
                    std::uint64_t& slot = table.row(oi)[v];
                    slot = checked_add(slot, 1);
                }
            }
        },
        budget);
    return table;
}

std::uint64_t oracle_count_mapping_all(const Pattern& h, const Graph& g,
                                       const std::vector<int>& s, VertexId v,
                                       std::uint64_t budget) {
    std::uint64_t count = 0;
    for_each_homomorphism(
        h, g,
        [&](std::span<const VertexId> image) {
            for (int hvert : s)
                if (image[static_cast<std::size_t>(hvert)] != v) return;
            ++count;
        },
        budget);
    return count;
}

std::map<std::vector<int>, std::uint64_t> oracle_signature_histogram(
    const Pattern& h, const Graph& g, const std::vector<int>& psi, VertexId v,
    std::uint64_t budget) {
    std::vector<int> members(psi);
    std::sort(members.begin(), members.end());
    std::map<std::vector<int>, std::uint64_t> histogram;
    for_each_homomorphism(
        h, g,
        [&](std::span<const VertexId> image) {
            std::vector<int> sig;
            for (int hvert : members)
                if (image[static_cast<std::size_t>(hvert)] == v) sig.push_back(hvert);
            if (sig.empty()) return;
            std::uint64_t& slot = histogram[sig];
            slot = checked_add(slot, 1);
        },
        budget);
    return histogram;
}

} // namespace homorbit
