#ifndef HOMORBIT_DECOMPOSITION_HPP
#define HOMORBIT_DECOMPOSITION_HPP

#include "homorbit/pattern.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace homorbit {

// DAG-tree decomposition with singleton source bags. Bags are sorted by
// source id; the tree is stored as parent links.
struct DagTreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<int> parent;  // parent[i] = bag index, -1 at the root
    int root = 0;

    int width() const {
        std::size_t w = 0;
        for (const auto& b : bags) w = std::max(w, b.size());
        return static_cast<int>(w);
    }
};

// In-degree-0 vertices, ascending.
std::vector<int> sources(const DagPattern& p);

// Forward reachability from a set of vertices (mask in, mask out).
std::uint16_t reach_mask(const DagPattern& p, std::uint16_t from);

// Union of per-source reachable sets, sorted.
std::vector<int> reach(const DagPattern& p, const std::vector<int>& bag);

// Kahn order with smallest-id tie-break.
std::vector<int> topological_order(const DagPattern& p);

// Searches spanning trees over the singleton source bags (Pruefer sequences
// in lexicographic order) and returns the first one satisfying the
// reach-separator property; nullopt when none exists, which signals
// DAG-treewidth > 1.
std::optional<DagTreeDecomposition> width1_decomposition(const DagPattern& p);

// Re-parenting pass; bags are untouched.
DagTreeDecomposition reroot(const DagTreeDecomposition& t, int new_root);

// down(B) per node: reach of the bag union over its subtree. The root's set
// induces all of P.
std::vector<std::vector<int>> down_sets(const DagTreeDecomposition& t, const DagPattern& p);

// Independent re-check of the decomposition properties: bags are source
// subsets covering all sources, parent links form a tree, and every bag on
// the path between two bags covers their reach intersection.
bool verify_decomposition(const DagPattern& p, const DagTreeDecomposition& t);

} // namespace homorbit

#endif
