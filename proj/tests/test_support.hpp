#ifndef HOMORBIT_TEST_SUPPORT_HPP
#define HOMORBIT_TEST_SUPPORT_HPP

#include "homorbit/graph.hpp"
#include "homorbit/pattern.hpp"
#include "homorbit/random_graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using homorbit::Graph;
using homorbit::Pattern;
using homorbit::VertexId;

inline Pattern make_path(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
    return Pattern::from_edges(k, std::move(edges));
}

inline Pattern make_cycle(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < k; ++v) edges.emplace_back(v, (v + 1) % k);
    return Pattern::from_edges(k, std::move(edges));
}

inline Pattern make_clique(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
    return Pattern::from_edges(k, std::move(edges));
}

// Hub is vertex 0.
inline Pattern make_star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Pattern::from_edges(leaves + 1, std::move(edges));
}

// Triangle 0-1-2 with pendant 3 on vertex 2.
inline Pattern make_paw() {
    return Pattern::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

// K4 minus the 2-3 edge.
inline Pattern make_diamond() {
    return Pattern::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

// Path 0..6 plus vertex 7 adjacent to 5 and 6: the 7-path with a triangle
// hung on its end. Vertices 6 and 7 form the only nontrivial orbit.
inline Pattern make_seven_path_triangle() {
    return Pattern::from_edges(
        8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {5, 7}, {6, 7}});
}

inline Graph complete_graph(VertexId n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

inline Graph cycle_graph(VertexId n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges));
}

// Hub is vertex 0.
inline Graph star_graph(VertexId leaves) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph(leaves + 1, std::move(edges));
}

inline Graph edgeless_graph(VertexId n) { return Graph(n, {}); }

// The acceptance corpus patterns.
inline std::vector<std::pair<std::string, Pattern>> corpus_patterns() {
    return {
        {"k2", make_path(2)},
        {"p3", make_path(3)},
        {"p4", make_path(4)},
        {"p5", make_path(5)},
        {"p6", make_path(6)},
        {"k3", make_clique(3)},
        {"k4", make_clique(4)},
        {"c4", make_cycle(4)},
        {"c5", make_cycle(5)},
        {"paw", make_paw()},
        {"diamond", make_diamond()},
        {"sevenpath_triangle", make_seven_path_triangle()},
    };
}

// Seeded corpus graph i: n cycles through 8..30, m through 8..90.
inline Graph corpus_graph(int i) {
    VertexId n = 8 + static_cast<VertexId>((7 * i) % 23);
    std::uint64_t m = 8 + static_cast<std::uint64_t>((13 * i) % 83);
    return homorbit::generate_gnm(n, m, 0xC0FFEEull + static_cast<std::uint64_t>(i));
}

// Reference degeneracy: repeated min-degree removal with a full scan per
// step; the maximum min-degree seen over the subgraph peelings.
inline VertexId slow_degeneracy(const Graph& g) {
    const VertexId n = g.vertex_count();
    std::vector<bool> removed(n, false);
    std::vector<VertexId> deg(n);
    for (VertexId v = 0; v < n; ++v) deg[v] = g.degree(v);
    VertexId best = 0;
    for (VertexId step = 0; step < n; ++step) {
        VertexId pick = n;
        for (VertexId v = 0; v < n; ++v)
            if (!removed[v] && (pick == n || deg[v] < deg[pick])) pick = v;
        best = std::max(best, deg[pick]);
        removed[pick] = true;
        for (VertexId u : g.neighbors(pick))
            if (!removed[u]) --deg[u];
    }
    return best;
}

} // namespace testsupport

#endif
