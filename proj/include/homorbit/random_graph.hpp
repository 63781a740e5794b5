#ifndef HOMORBIT_RANDOM_GRAPH_HPP
#define HOMORBIT_RANDOM_GRAPH_HPP

#include "homorbit/graph.hpp"

#include <cstdint>

namespace homorbit {

// Random spanning tree plus, per vertex, up to kappa-1 extra back-edges to
// random earlier vertices; degeneracy <= kappa by construction. Identical
// output for identical (n, kappa, seed).
Graph generate_degenerate_graph(VertexId n, VertexId kappa, std::uint64_t seed);

// Seeded simple random graph with up to target_m edges (fewer when the
// rejection budget runs out near the dense end).
Graph generate_gnm(VertexId n, std::uint64_t target_m, std::uint64_t seed);

} // namespace homorbit

#endif
