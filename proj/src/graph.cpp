#include "homorbit/graph.hpp"

#include "homorbit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace homorbit {

namespace {

constexpr std::uint64_t kMaxDenseVertexId = (1ull << 31) - 1;

struct RawEdgeList {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::uint64_t declared_n = 0;
    bool has_header = false;
    std::uint64_t max_id = 0;
    bool any_vertex = false;
};

bool parse_u64(std::string_view tok, std::uint64_t& out) {
    if (tok.empty()) return false;
    std::uint64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        if (v > (UINT64_MAX - 9) / 10) return false;
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    out = v;
    return true;
}

RawEdgeList parse_edge_list(std::string_view text) {
    RawEdgeList out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool seen_data = false;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::vector<std::string_view> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) toks.push_back(line.substr(start, i - start));
        }
        if (toks.empty()) continue;

        if (toks[0] == "n") {
            if (seen_data)
                throw parse_error(parse_error::kind::syntax, line_no,
                                  "header 'n <count>' must precede all edges");
            if (toks.size() != 2 || !parse_u64(toks[1], out.declared_n))
                throw parse_error(parse_error::kind::syntax, line_no,
                                  "malformed header, expected 'n <count>'");
            if (out.has_header)
                throw parse_error(parse_error::kind::syntax, line_no, "duplicate header");
            out.has_header = true;
            continue;
        }

        if (toks.size() != 2)
            throw parse_error(parse_error::kind::syntax, line_no,
                              "expected two vertex ids");
        std::uint64_t u, v;
        if (!parse_u64(toks[0], u) || !parse_u64(toks[1], v))
            throw parse_error(parse_error::kind::syntax, line_no,
                              "vertex ids must be nonnegative integers");
        if (u == v)
            throw parse_error(parse_error::kind::self_loop, line_no,
                              "self-loop " + std::to_string(u));
        seen_data = true;
        out.any_vertex = true;
        out.max_id = std::max({out.max_id, u, v});
        out.edges.emplace_back(u, v);
    }
    return out;
}

} // namespace

Graph::Graph(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges) : n_(n) {
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    m_ = edges.size();

    std::vector<VertexId> deg(n, 0);
    for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    offsets_.assign(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    adj_.resize(2 * m_);
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges) {
        adj_[cursor[u]++] = v;
        adj_[cursor[v]++] = u;
    }
    for (VertexId v = 0; v < n; ++v)
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph load_graph(std::string_view text) { return load_graph(text, LoadOptions{}).graph; }

LoadedGraph load_graph(std::string_view text, const LoadOptions& opts) {
    RawEdgeList raw = parse_edge_list(text);
    LoadedGraph out;

    if (opts.remap_ids) {
        std::vector<std::uint64_t> ids;
        ids.reserve(raw.edges.size() * 2);
        for (auto [u, v] : raw.edges) {
            ids.push_back(u);
            ids.push_back(v);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (raw.has_header && raw.declared_n < ids.size())
            throw parse_error(parse_error::kind::syntax, 1,
                              "declared vertex count smaller than number of distinct ids");
        std::uint64_t n = std::max<std::uint64_t>(raw.declared_n, ids.size());
        if (n > kMaxDenseVertexId)
            throw parse_error(parse_error::kind::syntax, 1, "vertex count too large");
        std::vector<std::pair<VertexId, VertexId>> dense;
        dense.reserve(raw.edges.size());
        auto rank = [&](std::uint64_t id) {
            return static_cast<VertexId>(
                std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        for (auto [u, v] : raw.edges) dense.emplace_back(rank(u), rank(v));
        out.graph = Graph(static_cast<VertexId>(n), std::move(dense));
        out.original_ids = std::move(ids);
        // Trailing isolated vertices keep their dense id as the external id.
        for (std::uint64_t v = out.original_ids.size(); v < n; ++v)
            out.original_ids.push_back(v);
        return out;
    }

    std::uint64_t implied_n = raw.any_vertex ? raw.max_id + 1 : 0;
    if (raw.has_header && raw.declared_n < implied_n)
        throw parse_error(parse_error::kind::syntax, 1,
                          "declared vertex count smaller than largest id + 1");
    std::uint64_t n = std::max(raw.declared_n, implied_n);
    if (n > kMaxDenseVertexId)
        throw parse_error(parse_error::kind::syntax, 1,
                          "vertex id too large; use id remapping for sparse ids");
    std::vector<std::pair<VertexId, VertexId>> dense;
    dense.reserve(raw.edges.size());
    for (auto [u, v] : raw.edges)
        dense.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    out.graph = Graph(static_cast<VertexId>(n), std::move(dense));
    return out;
}

Graph read_graph_file(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str(), opts).graph;
}

DegeneracyOrdering degeneracy_order(const Graph& g) {
    const VertexId n = g.vertex_count();
    DegeneracyOrdering out;
    out.order.reserve(n);
    out.position.assign(n, 0);

    std::vector<VertexId> deg(n);
    // Ordered by (current degree, id): extracting begin() peels the
    // min-degree vertex with the smallest id.
    std::set<std::pair<VertexId, VertexId>> queue;
    for (VertexId v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], v);
    }
    std::vector<bool> removed(n, false);
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[v] = true;
        out.kappa = std::max(out.kappa, d);
        out.position[v] = static_cast<VertexId>(out.order.size());
        out.order.push_back(v);
        for (VertexId u : g.neighbors(v)) {
            if (removed[u]) continue;
            queue.erase({deg[u], u});
            --deg[u];
            queue.emplace(deg[u], u);
        }
    }
    return out;
}

OrientedGraph::OrientedGraph(VertexId n, std::vector<std::pair<VertexId, VertexId>> arcs)
    : n_(n) {
    for (auto [u, v] : arcs) {
        if (u >= n || v >= n) throw std::invalid_argument("arc endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    m_ = arcs.size();

    std::vector<VertexId> deg(n, 0);
    for (auto [u, v] : arcs) ++deg[u];
    offsets_.assign(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        offsets_[v + 1] = offsets_[v] + deg[v];
        max_outdegree_ = std::max(max_outdegree_, deg[v]);
    }
    out_.resize(m_);
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : arcs) out_[cursor[u]++] = v;
    // arcs were sorted by (source, target), so each out list is sorted.
}

bool OrientedGraph::has_arc(VertexId u, VertexId v) const {
    auto nb = out_neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

OrientedGraph orient_acyclic(const Graph& g, const DegeneracyOrdering& ordering) {
    std::vector<std::pair<VertexId, VertexId>> arcs;
    arcs.reserve(g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (VertexId u : g.neighbors(v))
            if (ordering.position[v] < ordering.position[u]) arcs.emplace_back(v, u);
    return OrientedGraph(g.vertex_count(), std::move(arcs));
}

bool is_acyclic(const OrientedGraph& g) {
    const VertexId n = g.vertex_count();
    std::vector<VertexId> indeg(n, 0);
    for (VertexId v = 0; v < n; ++v)
        for (VertexId u : g.out_neighbors(v)) ++indeg[u];
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    std::uint64_t seen = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++seen;
        for (VertexId u : g.out_neighbors(v))
            if (--indeg[u] == 0) stack.push_back(u);
    }
    return seen == n;
}

} // namespace homorbit
