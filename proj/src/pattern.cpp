#include "homorbit/pattern.hpp"

#include "homorbit/bits.hpp"
#include "homorbit/errors.hpp"
#include "homorbit/graph.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace homorbit {

namespace {

// Union-find over pattern vertices.
struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

bool connected_within(const Pattern& h, std::uint16_t mask) {
    if (mask == 0) return true;
    std::uint16_t seen = static_cast<std::uint16_t>(mask & (~mask + 1));  // lowest bit
    for (;;) {
        std::uint16_t frontier = 0;
        std::uint16_t cur = seen;
        while (cur) {
            int v = __builtin_ctz(cur);
            cur &= static_cast<std::uint16_t>(cur - 1);
            frontier = static_cast<std::uint16_t>(frontier | (h.adjacency_mask(v) & mask));
        }
        std::uint16_t next = static_cast<std::uint16_t>(seen | frontier);
        if (next == seen) break;
        seen = next;
    }
    return seen == mask;
}

// Applies a permutation to an edge list and returns it normalized.
std::vector<std::pair<int, int>> permuted_edges(const std::vector<std::pair<int, int>>& edges,
                                                const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) {
        int a = perm[static_cast<std::size_t>(u)];
        int b = perm[static_cast<std::size_t>(v)];
        if (a > b) std::swap(a, b);
        out.emplace_back(a, b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_automorphism(const Pattern& h, const std::vector<int>& perm) {
    for (int v = 0; v < h.vertex_count(); ++v) {
        std::uint16_t mapped = 0;
        std::uint16_t nb = h.adjacency_mask(v);
        while (nb) {
            int u = __builtin_ctz(nb);
            nb &= static_cast<std::uint16_t>(nb - 1);
            mapped = static_cast<std::uint16_t>(mapped | (1u << perm[static_cast<std::size_t>(u)]));
        }
        if (mapped != h.adjacency_mask(perm[static_cast<std::size_t>(v)])) return false;
    }
    return true;
}

} // namespace

Pattern Pattern::from_edges(int k, std::vector<std::pair<int, int>> edges, int max_vertices) {
    int limit = std::min(max_vertices, kHardMaxPatternVertices);
    if (k > limit) throw pattern_too_large(k, limit);
    if (k < 1) throw invalid_pattern("pattern needs at least one vertex");
    Pattern p;
    p.k_ = k;
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= k || v >= k)
            throw invalid_pattern("edge endpoint out of range");
        if (u == v) throw invalid_pattern("self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    p.edges_ = std::move(edges);
    p.adj_.assign(static_cast<std::size_t>(k), 0);
    for (auto [u, v] : p.edges_) {
        p.adj_[static_cast<std::size_t>(u)] |= static_cast<std::uint16_t>(1u << v);
        p.adj_[static_cast<std::size_t>(v)] |= static_cast<std::uint16_t>(1u << u);
    }
    std::uint16_t all = static_cast<std::uint16_t>((1u << k) - 1);
    if (!connected_within(p, all)) throw invalid_pattern("pattern must be connected");
    return p;
}

Pattern parse_pattern(std::string_view text, int max_vertices) {
    Graph g = load_graph(text);
    if (g.vertex_count() == 0) throw invalid_pattern("pattern needs at least one vertex");
    int limit = std::min(max_vertices, kHardMaxPatternVertices);
    if (g.vertex_count() > static_cast<VertexId>(limit))
        throw pattern_too_large(static_cast<int>(g.vertex_count()), limit);
    std::vector<std::pair<int, int>> edges;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (VertexId u : g.neighbors(v))
            if (v < u) edges.emplace_back(static_cast<int>(v), static_cast<int>(u));
    return Pattern::from_edges(static_cast<int>(g.vertex_count()), std::move(edges),
                               max_vertices);
}

Pattern read_pattern_file(const std::string& path, int max_vertices) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pattern(buf.str(), max_vertices);
}

OrbitPartition automorphism_orbits(const Pattern& h) {
    const int k = h.vertex_count();
    DisjointSets sets(k);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (!is_automorphism(h, perm)) continue;
        for (int v = 0; v < k; ++v) sets.unite(v, perm[static_cast<std::size_t>(v)]);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<int, std::vector<int>> grouped;
    for (int v = 0; v < k; ++v) grouped[sets.find(v)].push_back(v);

    OrbitPartition out;
    out.orbit_of.assign(static_cast<std::size_t>(k), -1);
    for (auto& [root, members] : grouped) {
        for (int v : members) out.orbit_of[static_cast<std::size_t>(v)] =
            static_cast<int>(out.orbits.size());
        out.orbits.push_back(std::move(members));
    }
    // Same-orbit vertices are automorphic images of each other, so their
    // degrees must agree.
    for (const auto& orbit : out.orbits)
        for (int v : orbit)
            if (h.degree(v) != h.degree(orbit.front()))
                throw std::logic_error("orbit members with unequal degree");
    return out;
}

int licl(const Pattern& h) {
    const int k = h.vertex_count();
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        int size = __builtin_popcount(mask);
        if (size < 3 || size <= best) continue;
        bool two_regular = true;
        for (std::uint32_t rest = mask; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            if (__builtin_popcount(h.adjacency_mask(v) & mask) != 2) {
                two_regular = false;
                break;
            }
        }
        // A connected 2-regular induced subgraph is a chordless cycle.
        if (two_regular && connected_within(h, static_cast<std::uint16_t>(mask)))
            best = size;
    }
    return best;
}

namespace {

// Enumerates induced simple paths from `start`, reporting the length of each
// whose far endpoint lies in the same orbit. seq_mask covers the whole path,
// so the "adjacent only to the previous vertex" test is one mask comparison.
void induced_path_dfs(const Pattern& h, const std::vector<int>& orbit_of, int start,
                      int last, std::uint16_t seq_mask, int length, int& best) {
    if (length > 0 && last != start && orbit_of[static_cast<std::size_t>(last)] ==
                                           orbit_of[static_cast<std::size_t>(start)])
        best = std::max(best, length);
    std::uint16_t candidates =
        static_cast<std::uint16_t>(h.adjacency_mask(last) & ~seq_mask);
    while (candidates) {
        int u = __builtin_ctz(candidates);
        candidates &= static_cast<std::uint16_t>(candidates - 1);
        if ((h.adjacency_mask(u) & seq_mask) != (1u << last)) continue;
        induced_path_dfs(h, orbit_of, start, u,
                         static_cast<std::uint16_t>(seq_mask | (1u << u)), length + 1,
                         best);
    }
}

} // namespace

int lipco(const Pattern& h) {
    // The h = h' reading: an induced path from a vertex back to itself is an
    // induced cycle through it, and every chordless cycle passes through each
    // of its own vertices, so that case contributes exactly licl(h).
    int best = licl(h);
    OrbitPartition orbits = automorphism_orbits(h);
    for (int start = 0; start < h.vertex_count(); ++start) {
        if (orbits.orbits[static_cast<std::size_t>(
                              orbits.orbit_of[static_cast<std::size_t>(start)])]
                .size() < 2)
            continue;
        induced_path_dfs(h, orbits.orbit_of, start, start,
                         static_cast<std::uint16_t>(1u << start), 0, best);
    }
    return best;
}

Verdict dichotomy_verdict(const Pattern& h) { return dichotomy_verdict(lipco(h)); }

std::string_view to_string(Verdict v) {
    return v == Verdict::linear ? "LINEAR" : "CONJECTURALLY-HARD";
}

std::vector<std::vector<int>> orbit_independent_sets(const Pattern& h,
                                                     const std::vector<int>& psi) {
    std::vector<int> members(psi);
    std::sort(members.begin(), members.end());
    const int t = static_cast<int>(members.size());
    std::vector<std::vector<int>> out;
    for (std::uint32_t bits = 1; bits < (1u << t); ++bits) {
        std::uint16_t mask = 0;
        std::vector<int> subset;
        for (int i = 0; i < t; ++i)
            if ((bits >> i) & 1) {
                subset.push_back(members[static_cast<std::size_t>(i)]);
                mask = static_cast<std::uint16_t>(mask |
                                                  (1u << members[static_cast<std::size_t>(i)]));
            }
        bool independent = true;
        for (int v : subset)
            if (h.adjacency_mask(v) & mask) {
                independent = false;
                break;
            }
        if (independent) out.push_back(std::move(subset));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

MergedPattern merge_pattern(const Pattern& h, const std::vector<int>& s) {
    if (s.empty()) throw invalid_merge_set("merge set is empty");
    std::vector<int> members(s);
    std::sort(members.begin(), members.end());
    if (std::unique(members.begin(), members.end()) != members.end())
        throw invalid_merge_set("merge set has duplicates");
    for (int v : members)
        if (v < 0 || v >= h.vertex_count())
            throw invalid_merge_set("merge set vertex out of range");
    std::uint16_t smask = vertices_to_mask(members);
    for (int v : members)
        if (h.adjacency_mask(v) & smask)
            throw invalid_merge_set("merge set is not independent");

    const int rep = members.front();
    std::vector<int> new_id(static_cast<std::size_t>(h.vertex_count()), -1);
    int next = 0;
    for (int v = 0; v < h.vertex_count(); ++v) {
        if (((smask >> v) & 1) && v != rep) continue;  // collapsed into rep
        new_id[static_cast<std::size_t>(v)] = next++;
    }
    for (int v : members) new_id[static_cast<std::size_t>(v)] = new_id[static_cast<std::size_t>(rep)];

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : h.edges()) {
        int a = new_id[static_cast<std::size_t>(u)];
        int b = new_id[static_cast<std::size_t>(v)];
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);  // a != b since S is independent
    }

    MergedPattern out;
    out.base = Pattern::from_edges(next, std::move(edges), kHardMaxPatternVertices);
    out.merged_vertex = new_id[static_cast<std::size_t>(rep)];
    out.source_set = std::move(members);
    out.sign = (out.source_set.size() % 2 == 1) ? 1 : -1;
    return out;
}

DagPattern::DagPattern(int k, std::vector<std::pair<int, int>> arcs) : k_(k) {
    for (auto [u, v] : arcs)
        if (u < 0 || v < 0 || u >= k || v >= k || u == v)
            throw invalid_pattern("bad arc");
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    out_.assign(static_cast<std::size_t>(k), 0);
    in_.assign(static_cast<std::size_t>(k), 0);
    for (auto [u, v] : arcs_) {
        out_[static_cast<std::size_t>(u)] |= static_cast<std::uint16_t>(1u << v);
        in_[static_cast<std::size_t>(v)] |= static_cast<std::uint16_t>(1u << u);
    }
    // Kahn check.
    std::vector<int> indeg(static_cast<std::size_t>(k), 0);
    for (auto [u, v] : arcs_) ++indeg[static_cast<std::size_t>(v)];
    std::vector<int> stack;
    for (int v = 0; v < k; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        std::uint16_t outs = out_[static_cast<std::size_t>(v)];
        while (outs) {
            int u = __builtin_ctz(outs);
            outs &= static_cast<std::uint16_t>(outs - 1);
            if (--indeg[static_cast<std::size_t>(u)] == 0) stack.push_back(u);
        }
    }
    if (seen != k) throw invalid_pattern("orientation has a directed cycle");
}

std::vector<DagPattern> acyclic_orientations(const Pattern& h) {
    const int k = h.vertex_count();
    const auto& edges = h.edges();
    std::vector<int> pos(static_cast<std::size_t>(k));
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    // Direction bit vector per edge index, packed into two words (<= 120 edges).
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    do {
        for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
        std::pair<std::uint64_t, std::uint64_t> code{0, 0};
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [u, v] = edges[e];
            bool flipped = pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)];
            if (!flipped) continue;
            if (e < 64)
                code.first |= 1ull << e;
            else
                code.second |= 1ull << (e - 64);
        }
        seen.insert(code);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<DagPattern> out;
    out.reserve(seen.size());
    for (auto code : seen) {
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            bool flipped = e < 64 ? ((code.first >> e) & 1) : ((code.second >> (e - 64)) & 1);
            auto [u, v] = edges[e];
            arcs.emplace_back(flipped ? v : u, flipped ? u : v);
        }
        out.emplace_back(k, std::move(arcs));
    }
    return out;
}

CanonicalForm canonical_form(const Pattern& h, int marked_vertex) {
    const int k = h.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    bool have_best = false;
    std::vector<std::pair<int, int>> best_edges;
    int best_mark = -1;
    std::vector<int> best_perm;
    do {
        auto mapped = permuted_edges(h.edges(), perm);
        int mark = marked_vertex >= 0 ? perm[static_cast<std::size_t>(marked_vertex)] : -1;
        if (!have_best || mapped < best_edges ||
            (mapped == best_edges && mark < best_mark)) {
            have_best = true;
            best_edges = std::move(mapped);
            best_mark = mark;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    CanonicalForm out;
    out.pattern = Pattern::from_edges(k, best_edges, kHardMaxPatternVertices);
    out.relabel = std::move(best_perm);
    out.mark = best_mark;
    return out;
}

bool isomorphic(const Pattern& a, const Pattern& b) {
    if (a.vertex_count() != b.vertex_count() || a.edges().size() != b.edges().size())
        return false;
    return canonical_form(a).pattern == canonical_form(b).pattern;
}

std::vector<IsoClass> isomorphism_classes(const std::vector<Pattern>& patterns,
                                          const std::vector<int>& signs) {
    if (!signs.empty() && signs.size() != patterns.size())
        throw std::invalid_argument("signs must match patterns");
    std::vector<IsoClass> out;
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, std::size_t> index;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        auto canon = canonical_form(patterns[i]);
        std::pair<int, std::vector<std::pair<int, int>>> key{
            patterns[i].vertex_count(), canon.pattern.edges()};
        auto [it, inserted] = index.emplace(std::move(key), out.size());
        if (inserted) out.emplace_back();
        IsoClass& cls = out[it->second];
        cls.members.push_back(i);
        cls.signed_tally += signs.empty() ? 1 : signs[i];
    }
    return out;
}

} // namespace homorbit
