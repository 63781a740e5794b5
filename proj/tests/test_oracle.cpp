#include "homorbit/oracle.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace homorbit;
using namespace testsupport;

TEST_CASE("oracle_hom fixtures") {
    CHECK(oracle_hom(make_clique(3), complete_graph(3)) == 6);
    CHECK(oracle_hom(make_path(3), complete_graph(3)) == 12);  // sum of deg^2
    Graph c5 = cycle_graph(5);
    CHECK(oracle_hom(make_path(2), c5) == 2 * c5.edge_count());
    Graph star = star_graph(4);
    CHECK(oracle_hom(make_path(2), star) == 2 * star.edge_count());
    CHECK(oracle_hom(make_clique(3), edgeless_graph(5)) == 0);
    CHECK(oracle_hom(Pattern::from_edges(1, {}), edgeless_graph(5)) == 5);
}

TEST_CASE("oracle budget is a hard preflight") {
    Graph g = edgeless_graph(11);
    Pattern p8 = make_seven_path_triangle();
    CHECK_THROWS_AS(oracle_hom(p8, g), budget_exceeded);        // 11^8 > 1e8
    CHECK(oracle_hom(p8, edgeless_graph(10)) == 0);             // 10^8 is within budget
    CHECK(oracle_hom(p8, g, 300'000'000ull) == 0);              // explicit budget
    CHECK_THROWS_AS(oracle_hom(p8, g, 100ull), budget_exceeded);
}

TEST_CASE("oracle vertex counts of K2 on K3 are degrees") {
    VertexHomTable t = oracle_vertex_homs(make_path(2), complete_graph(3));
    for (int h = 0; h < 2; ++h)
        for (VertexId v = 0; v < 3; ++v) CHECK(t.at(h, v) == 2);
}

TEST_CASE("oracle column sums equal the total count") {
    for (const auto& [name, h] : corpus_patterns()) {
        CAPTURE(name);
        Graph g = corpus_graph(3);
        std::uint64_t total = oracle_hom(h, g, 1ull << 62);
        VertexHomTable t = oracle_vertex_homs(h, g, 1ull << 62);
        for (int hv = 0; hv < h.vertex_count(); ++hv) {
            std::uint64_t sum = 0;
            for (VertexId v = 0; v < g.vertex_count(); ++v) sum += t.at(hv, v);
            CHECK(sum == total);
        }
    }
}

TEST_CASE("oracle orbit counts fixtures") {
    OrbitHomTable k2 = oracle_orbit_homs(make_path(2), complete_graph(3));
    REQUIRE(k2.orbit_representatives == std::vector<int>{0});
    for (VertexId v = 0; v < 3; ++v) CHECK(k2.at(0, v) == 4);

    OrbitHomTable k3 = oracle_orbit_homs(make_clique(3), complete_graph(4));
    for (VertexId v = 0; v < 4; ++v) CHECK(k3.at(0, v) == 18);

    OrbitHomTable zero = oracle_orbit_homs(make_clique(3), edgeless_graph(4));
    for (VertexId v = 0; v < 4; ++v) CHECK(zero.at(0, v) == 0);
}

TEST_CASE("signature histogram of K2 on K3") {
    auto hist = oracle_signature_histogram(make_path(2), complete_graph(3), {0, 1}, 0);
    REQUIRE(hist.size() == 2);  // the two singletons; empty signatures excluded
    CHECK(hist.at({0}) == 2);
    CHECK(hist.at({1}) == 2);
}

TEST_CASE("signatures in a clique orbit are singletons") {
    auto hist = oracle_signature_histogram(make_clique(3), complete_graph(4), {0, 1, 2}, 1);
    for (const auto& [sig, count] : hist) {
        CHECK(sig.size() == 1);
        CHECK(count > 0);
    }
}

TEST_CASE("C4 on the 4-cycle puts signature mass on an opposite pair") {
    // The 2-coloring collapse maps both opposite orbit vertices onto v.
    auto hist = oracle_signature_histogram(make_cycle(4), cycle_graph(4), {0, 1, 2, 3}, 0);
    CHECK(hist.count({0, 2}) == 1);
    CHECK(hist.at({0, 2}) > 0);
}

TEST_CASE("signature claims on random pairs") {
    for (int i = 0; i < 6; ++i) {
        Graph g = corpus_graph(i);
        for (const Pattern& h : {make_cycle(4), make_paw(), make_clique(3), make_path(4)}) {
            OrbitPartition orbits = automorphism_orbits(h);
            OrbitHomTable orbit_table = oracle_orbit_homs(h, g, 1ull << 62);
            for (std::size_t oi = 0; oi < orbits.orbits.size(); ++oi) {
                const auto& psi = orbits.orbits[oi];
                for (VertexId v = 0; v < g.vertex_count(); v += 3) {
                    auto hist = oracle_signature_histogram(h, g, psi, v, 1ull << 62);
                    std::uint64_t mass = 0;
                    for (const auto& [sig, count] : hist) {
                        // Claim: every signature is independent in H.
                        for (std::size_t a = 0; a < sig.size(); ++a)
                            for (std::size_t b = a + 1; b < sig.size(); ++b)
                                CHECK_FALSE(h.has_edge(sig[a], sig[b]));
                        mass += count;
                    }
                    // Claim: total signature mass reproduces the orbit count.
                    CHECK(mass == orbit_table.at(oi, v));
                    // Claim: superset sums give the all-of-S counts.
                    for (const auto& s : orbit_independent_sets(h, psi)) {
                        std::uint64_t superset_sum = 0;
                        for (const auto& [sig, count] : hist) {
                            bool contains = std::all_of(s.begin(), s.end(), [&](int x) {
                                return std::find(sig.begin(), sig.end(), x) != sig.end();
                            });
                            if (contains) superset_sum += count;
                        }
                        CHECK(superset_sum ==
                              oracle_count_mapping_all(h, g, s, v, 1ull << 62));
                    }
                }
            }
        }
    }
}

TEST_CASE("alternating subset sums telescope to one") {
    // sum over nonempty S subseteq S' of (-1)^(|S|+1) == 1
    for (int size = 1; size <= 8; ++size) {
        long long sum = 0;
        for (std::uint32_t bits = 1; bits < (1u << size); ++bits)
            sum += (__builtin_popcount(bits) % 2 == 1) ? 1 : -1;
        CHECK(sum == 1);
    }
}

TEST_CASE("directed oracle partitions the undirected count") {
    for (int i = 0; i < 5; ++i) {
        Graph g = corpus_graph(10 + i);
        OrientedGraph og = orient_acyclic(g, degeneracy_order(g));
        for (const Pattern& h : {make_path(4), make_clique(3), make_cycle(4), make_paw()}) {
            std::uint64_t undirected = oracle_hom(h, g, 1ull << 62);
            std::uint64_t summed = 0;
            for (const DagPattern& p : acyclic_orientations(h))
                summed += oracle_hom(p, og, 1ull << 62);
            CHECK(summed == undirected);
        }
    }
}
