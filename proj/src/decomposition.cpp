#include "homorbit/decomposition.hpp"

#include "homorbit/bits.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace homorbit {

std::vector<int> sources(const DagPattern& p) {
    std::vector<int> out;
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.in_mask(v) == 0) out.push_back(v);
    return out;
}

std::uint16_t reach_mask(const DagPattern& p, std::uint16_t from) {
    std::uint16_t seen = from;
    for (;;) {
        std::uint16_t next = seen;
        std::uint16_t cur = seen;
        while (cur) {
            int v = __builtin_ctz(cur);
            cur &= static_cast<std::uint16_t>(cur - 1);
            next = static_cast<std::uint16_t>(next | p.out_mask(v));
        }
        if (next == seen) return seen;
        seen = next;
    }
}

std::vector<int> reach(const DagPattern& p, const std::vector<int>& bag) {
    return mask_to_vertices(reach_mask(p, vertices_to_mask(bag)));
}

std::vector<int> topological_order(const DagPattern& p) {
    const int k = p.vertex_count();
    std::vector<int> indeg(static_cast<std::size_t>(k), 0);
    for (auto [u, v] : p.arcs()) ++indeg[static_cast<std::size_t>(v)];
    std::uint16_t ready = 0;
    for (int v = 0; v < k; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0)
            ready = static_cast<std::uint16_t>(ready | (1u << v));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(k));
    while (ready) {
        int v = __builtin_ctz(ready);
        ready &= static_cast<std::uint16_t>(ready - 1);
        order.push_back(v);
        std::uint16_t outs = p.out_mask(v);
        while (outs) {
            int u = __builtin_ctz(outs);
            outs &= static_cast<std::uint16_t>(outs - 1);
            if (--indeg[static_cast<std::size_t>(u)] == 0)
                ready = static_cast<std::uint16_t>(ready | (1u << u));
        }
    }
    assert(order.size() == static_cast<std::size_t>(k));
    return order;
}

namespace {

// Decodes a Pruefer sequence over t >= 2 labels into tree edges.
std::vector<std::pair<int, int>> pruefer_decode(const std::vector<int>& seq, int t) {
    std::vector<int> degree(static_cast<std::size_t>(t), 1);
    for (int a : seq) ++degree[static_cast<std::size_t>(a)];
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(t - 1));
    std::vector<bool> used(static_cast<std::size_t>(t), false);
    for (int a : seq) {
        int leaf = -1;
        for (int j = 0; j < t; ++j)
            if (!used[static_cast<std::size_t>(j)] && degree[static_cast<std::size_t>(j)] == 1) {
                leaf = j;
                break;
            }
        edges.emplace_back(leaf, a);
        used[static_cast<std::size_t>(leaf)] = true;
        --degree[static_cast<std::size_t>(a)];
    }
    std::vector<int> rest;
    for (int j = 0; j < t; ++j)
        if (!used[static_cast<std::size_t>(j)] && degree[static_cast<std::size_t>(j)] == 1)
            rest.push_back(j);
    assert(rest.size() == 2);
    edges.emplace_back(rest[0], rest[1]);
    return edges;
}

// Path between two nodes of a tree given as adjacency lists.
std::vector<int> tree_path(const std::vector<std::vector<int>>& adj, int from, int to) {
    std::vector<int> prev(adj.size(), -1);
    std::vector<int> stack{from};
    prev[static_cast<std::size_t>(from)] = from;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) break;
        for (int u : adj[static_cast<std::size_t>(v)])
            if (prev[static_cast<std::size_t>(u)] == -1) {
                prev[static_cast<std::size_t>(u)] = v;
                stack.push_back(u);
            }
    }
    std::vector<int> path;
    for (int v = to; v != from; v = prev[static_cast<std::size_t>(v)]) path.push_back(v);
    path.push_back(from);
    return path;
}

bool separator_property_holds(const std::vector<std::vector<int>>& adj,
                              const std::vector<std::uint16_t>& reach_of) {
    const int t = static_cast<int>(adj.size());
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            std::uint16_t meet = static_cast<std::uint16_t>(reach_of[static_cast<std::size_t>(i)] &
                                                            reach_of[static_cast<std::size_t>(j)]);
            if (meet == 0) continue;
            for (int b : tree_path(adj, i, j))
                if ((meet & ~reach_of[static_cast<std::size_t>(b)]) != 0) return false;
        }
    return true;
}

DagTreeDecomposition from_tree_edges(const std::vector<int>& srcs,
                                     const std::vector<std::pair<int, int>>& edges) {
    DagTreeDecomposition t;
    for (int s : srcs) t.bags.push_back({s});
    t.parent.assign(srcs.size(), -1);
    t.root = 0;
    std::vector<std::vector<int>> adj(srcs.size());
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> stack{0};
    std::vector<bool> seen(srcs.size(), false);
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                t.parent[static_cast<std::size_t>(u)] = v;
                stack.push_back(u);
            }
    }
    return t;
}

} // namespace

std::optional<DagTreeDecomposition> width1_decomposition(const DagPattern& p) {
    std::vector<int> srcs = sources(p);
    const int t = static_cast<int>(srcs.size());
    std::vector<std::uint16_t> reach_of(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i)
        reach_of[static_cast<std::size_t>(i)] =
            reach_mask(p, static_cast<std::uint16_t>(1u << srcs[static_cast<std::size_t>(i)]));

    if (t == 1) return from_tree_edges(srcs, {});
    if (t == 2) return from_tree_edges(srcs, {{0, 1}});

    // Pruefer sequences of length t-2, lexicographic; the first tree whose
    // node set of singleton bags satisfies the separator property wins.
    std::vector<int> seq(static_cast<std::size_t>(t - 2), 0);
    for (;;) {
        auto edges = pruefer_decode(seq, t);
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(t));
        for (auto [a, b] : edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        if (separator_property_holds(adj, reach_of)) return from_tree_edges(srcs, edges);
        int i = t - 3;
        while (i >= 0 && seq[static_cast<std::size_t>(i)] == t - 1) {
            seq[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++seq[static_cast<std::size_t>(i)];
    }
    return std::nullopt;
}

DagTreeDecomposition reroot(const DagTreeDecomposition& t, int new_root) {
    DagTreeDecomposition out = t;
    out.root = new_root;
    std::fill(out.parent.begin(), out.parent.end(), -1);
    std::vector<std::vector<int>> adj(t.bags.size());
    for (std::size_t i = 0; i < t.bags.size(); ++i)
        if (t.parent[i] >= 0) {
            adj[i].push_back(t.parent[i]);
            adj[static_cast<std::size_t>(t.parent[i])].push_back(static_cast<int>(i));
        }
    std::vector<int> stack{new_root};
    std::vector<bool> seen(t.bags.size(), false);
    seen[static_cast<std::size_t>(new_root)] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                out.parent[static_cast<std::size_t>(u)] = v;
                stack.push_back(u);
            }
    }
    return out;
}

std::vector<std::vector<int>> down_sets(const DagTreeDecomposition& t, const DagPattern& p) {
    const std::size_t nodes = t.bags.size();
    std::vector<std::uint16_t> down(nodes, 0);
    for (std::size_t i = 0; i < nodes; ++i)
        down[i] = reach_mask(p, vertices_to_mask(t.bags[i]));
    // Children before parents: repeatedly fold leaves upward.
    std::vector<int> order;
    order.reserve(nodes);
    {
        std::vector<std::vector<int>> children(nodes);
        for (std::size_t i = 0; i < nodes; ++i)
            if (t.parent[i] >= 0) children[static_cast<std::size_t>(t.parent[i])].push_back(static_cast<int>(i));
        std::vector<int> stack{t.root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int c : children[static_cast<std::size_t>(v)]) stack.push_back(c);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (t.parent[static_cast<std::size_t>(*it)] >= 0)
            down[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(*it)])] =
                static_cast<std::uint16_t>(down[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(*it)])] |
                                           down[static_cast<std::size_t>(*it)]);

    std::vector<std::vector<int>> out(nodes);
    for (std::size_t i = 0; i < nodes; ++i) out[i] = mask_to_vertices(down[i]);
    return out;
}

bool verify_decomposition(const DagPattern& p, const DagTreeDecomposition& t) {
    const std::size_t nodes = t.bags.size();
    if (nodes == 0 || t.parent.size() != nodes) return false;
    if (t.root < 0 || static_cast<std::size_t>(t.root) >= nodes) return false;
    if (t.parent[static_cast<std::size_t>(t.root)] != -1) return false;

    std::vector<int> srcs = sources(p);
    std::uint16_t source_mask = vertices_to_mask(srcs);
    std::uint16_t covered = 0;
    for (const auto& bag : t.bags) {
        std::uint16_t bm = vertices_to_mask(bag);
        if ((bm & ~source_mask) != 0) return false;  // property 1
        covered = static_cast<std::uint16_t>(covered | bm);
    }
    if (covered != source_mask) return false;  // property 2

    // Parent links must form a single tree rooted at t.root.
    std::vector<std::vector<int>> adj(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        if (i == static_cast<std::size_t>(t.root)) continue;
        int par = t.parent[i];
        if (par < 0 || static_cast<std::size_t>(par) >= nodes) return false;
        adj[i].push_back(par);
        adj[static_cast<std::size_t>(par)].push_back(static_cast<int>(i));
    }
    {
        std::vector<bool> seen(nodes, false);
        std::vector<int> stack{t.root};
        seen[static_cast<std::size_t>(t.root)] = true;
        std::size_t count = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++count;
            for (int u : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    stack.push_back(u);
                }
        }
        if (count != nodes) return false;
    }

    // Property 3 over all bag triples.
    std::vector<std::uint16_t> reach_of(nodes);
    for (std::size_t i = 0; i < nodes; ++i)
        reach_of[i] = reach_mask(p, vertices_to_mask(t.bags[i]));
    for (std::size_t i = 0; i < nodes; ++i)
        for (std::size_t j = 0; j < nodes; ++j) {
            if (i == j) continue;
            std::uint16_t meet =
                static_cast<std::uint16_t>(reach_of[i] & reach_of[j]);
            for (int b : tree_path(adj, static_cast<int>(i), static_cast<int>(j)))
                if ((meet & ~reach_of[static_cast<std::size_t>(b)]) != 0) return false;
        }
    return true;
}

} // namespace homorbit
