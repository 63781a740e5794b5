#ifndef HOMORBIT_GRAPH_HPP
#define HOMORBIT_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homorbit {

using VertexId = std::uint32_t;

// Undirected simple graph in CSR form. Neighbor lists are sorted and
// duplicate-free, adjacency is symmetric, no self-loops.
class Graph {
public:
    Graph() = default;

    // Collapses duplicate edges. Endpoints must be < n and distinct.
    Graph(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges);

    VertexId vertex_count() const noexcept { return n_; }
    std::uint64_t edge_count() const noexcept { return m_; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    VertexId degree(VertexId v) const {
        return static_cast<VertexId>(offsets_[v + 1] - offsets_[v]);
    }

    bool has_edge(VertexId u, VertexId v) const;

private:
    VertexId n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<VertexId> adj_;
};

struct LoadOptions {
    // Densify arbitrary (sparse) external ids; the mapping back to the
    // original ids is returned alongside the graph.
    bool remap_ids = false;
};

struct LoadedGraph {
    Graph graph;
    // original_ids[v] is the external id of dense vertex v; empty when no
    // remapping was requested.
    std::vector<std::uint64_t> original_ids;
};

// Edge-list text format: lines "u v" with whitespace separation, '#' starts
// a comment, an optional first line "n <count>" declares trailing isolated
// vertices. Throws parse_error.
Graph load_graph(std::string_view text);
LoadedGraph load_graph(std::string_view text, const LoadOptions& opts);
Graph read_graph_file(const std::string& path, const LoadOptions& opts = {});

struct DegeneracyOrdering {
    std::vector<VertexId> order;     // peel sequence, earliest first
    std::vector<VertexId> position;  // position[v] = index of v in order
    VertexId kappa = 0;              // degeneracy
};

// Matula-Beck min-degree peeling; ties broken by smallest vertex id so
// repeated runs produce identical orderings.
DegeneracyOrdering degeneracy_order(const Graph& g);

// Acyclic orientation with CSR out-adjacency, sorted per vertex.
class OrientedGraph {
public:
    OrientedGraph() = default;
    OrientedGraph(VertexId n, std::vector<std::pair<VertexId, VertexId>> arcs);

    VertexId vertex_count() const noexcept { return n_; }
    std::uint64_t arc_count() const noexcept { return m_; }
    VertexId max_outdegree() const noexcept { return max_outdegree_; }

    std::span<const VertexId> out_neighbors(VertexId v) const {
        return {out_.data() + offsets_[v], out_.data() + offsets_[v + 1]};
    }

    VertexId outdegree(VertexId v) const {
        return static_cast<VertexId>(offsets_[v + 1] - offsets_[v]);
    }

    bool has_arc(VertexId u, VertexId v) const;

private:
    VertexId n_ = 0;
    std::uint64_t m_ = 0;
    VertexId max_outdegree_ = 0;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<VertexId> out_;
};

// Directs every edge from the earlier peel position to the later one. The
// result is a DAG whose maximum outdegree equals ordering.kappa.
OrientedGraph orient_acyclic(const Graph& g, const DegeneracyOrdering& ordering);

// Topological check; used by tests and assertions.
bool is_acyclic(const OrientedGraph& g);

} // namespace homorbit

#endif
