#include "homorbit/random_graph.hpp"

#include <random>
#include <unordered_set>
#include <vector>

namespace homorbit {

namespace {

// Raw engine outputs with modulo keep the generators byte-stable across
// platforms; std distributions would not be.
std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

} // namespace

Graph generate_degenerate_graph(VertexId n, VertexId kappa, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (kappa == 0 || n == 0) return Graph(n, {});
    edges.reserve(static_cast<std::size_t>(n) * kappa / 2);
    std::unordered_set<std::uint64_t> present;
    auto add_edge = [&](VertexId a, VertexId b) {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        std::uint64_t code = static_cast<std::uint64_t>(a) * n + b;
        if (!present.insert(code).second) return false;
        edges.emplace_back(a, b);
        return true;
    };
    for (VertexId v = 1; v < n; ++v) {
        VertexId parent = static_cast<VertexId>(next_below(rng, v));
        add_edge(parent, v);
        VertexId extras = static_cast<VertexId>(next_below(rng, kappa));  // 0..kappa-1
        for (VertexId e = 0; e < extras; ++e)
            add_edge(static_cast<VertexId>(next_below(rng, v)), v);
    }
    return Graph(n, std::move(edges));
}

Graph generate_gnm(VertexId n, std::uint64_t target_m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (n < 2) return Graph(n, {});
    std::uint64_t max_m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    target_m = std::min(target_m, max_m);
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(target_m);
    std::unordered_set<std::uint64_t> present;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 20 * target_m + 100;
    while (edges.size() < target_m && attempts < attempt_cap) {
        ++attempts;
        VertexId a = static_cast<VertexId>(next_below(rng, n));
        VertexId b = static_cast<VertexId>(next_below(rng, n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        std::uint64_t code = static_cast<std::uint64_t>(a) * n + b;
        if (!present.insert(code).second) continue;
        edges.emplace_back(a, b);
    }
    return Graph(n, std::move(edges));
}

} // namespace homorbit
