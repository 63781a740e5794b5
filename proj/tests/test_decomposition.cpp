#include "homorbit/decomposition.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace homorbit;
using namespace testsupport;

namespace {

// K3 oriented 0->1, 0->2, 1->2.
DagPattern oriented_k3() { return DagPattern(3, {{0, 1}, {0, 2}, {1, 2}}); }

// C4 oriented 0->1, 0->3, 2->1, 2->3 (two sources).
DagPattern oriented_c4() { return DagPattern(4, {{0, 1}, {0, 3}, {2, 1}, {2, 3}}); }

// C6 with alternating sources 0, 2, 4.
DagPattern alternating_c6() {
    return DagPattern(6, {{0, 1}, {2, 1}, {2, 3}, {4, 3}, {4, 5}, {0, 5}});
}

} // namespace

TEST_CASE("sources") {
    CHECK(sources(oriented_k3()) == std::vector<int>{0});
    CHECK(sources(oriented_c4()) == std::vector<int>{0, 2});
    CHECK(sources(DagPattern(2, {{0, 1}})) == std::vector<int>{0});
    CHECK(sources(alternating_c6()) == std::vector<int>{0, 2, 4});
}

TEST_CASE("reach") {
    CHECK(reach(oriented_k3(), {0}) == std::vector<int>{0, 1, 2});
    CHECK(reach(oriented_c4(), {0}) == std::vector<int>{0, 1, 3});
    CHECK(reach(oriented_c4(), {0, 2}) == std::vector<int>{0, 1, 2, 3});
    CHECK(reach(oriented_c4(), {}) == std::vector<int>{});
}

TEST_CASE("width-1 decomposition of a single-source DAG is one node") {
    auto t = width1_decomposition(oriented_k3());
    REQUIRE(t.has_value());
    CHECK(t->bags.size() == 1);
    CHECK(t->width() == 1);
    CHECK(verify_decomposition(oriented_k3(), *t));
}

TEST_CASE("width-1 decomposition of the two-source C4") {
    auto t = width1_decomposition(oriented_c4());
    REQUIRE(t.has_value());
    CHECK(t->bags.size() == 2);
    CHECK(t->width() == 1);
    CHECK(verify_decomposition(oriented_c4(), *t));
}

TEST_CASE("alternating C6 has no width-1 decomposition") {
    CHECK_FALSE(width1_decomposition(alternating_c6()).has_value());
}

TEST_CASE("a bad tree fails the independent verifier") {
    DagPattern p = alternating_c6();
    DagTreeDecomposition t;
    t.bags = {{0}, {2}, {4}};
    t.parent = {-1, 0, 0};  // star centered at {0}: Reach({2}) meets Reach({4}) at 3
    t.root = 0;
    CHECK_FALSE(verify_decomposition(p, t));
}

TEST_CASE("every orientation of every licl<=5 corpus pattern decomposes at width 1") {
    for (const auto& [name, h] : corpus_patterns()) {
        CAPTURE(name);
        REQUIRE(licl(h) <= 5);
        for (const DagPattern& p : acyclic_orientations(h)) {
            auto t = width1_decomposition(p);
            REQUIRE(t.has_value());
            CHECK(verify_decomposition(p, *t));
        }
    }
}

TEST_CASE("down sets") {
    DagPattern p = oriented_c4();
    auto t = width1_decomposition(p);
    REQUIRE(t.has_value());
    auto down = down_sets(*t, p);
    REQUIRE(down.size() == 2);
    // The root dominates the whole pattern; the leaf covers its own reach.
    CHECK(down[static_cast<std::size_t>(t->root)] == std::vector<int>{0, 1, 2, 3});
    int leaf = t->root == 0 ? 1 : 0;
    CHECK(down[static_cast<std::size_t>(leaf)] ==
          reach(p, t->bags[static_cast<std::size_t>(leaf)]));

    DagPattern k3 = oriented_k3();
    auto t1 = width1_decomposition(k3);
    CHECK(down_sets(*t1, k3)[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("reroot preserves validity and the down-set law") {
    for (const DagPattern& p : acyclic_orientations(make_path(5))) {
        auto t = width1_decomposition(p);
        REQUIRE(t.has_value());
        for (std::size_t b = 0; b < t->bags.size(); ++b) {
            DagTreeDecomposition r = reroot(*t, static_cast<int>(b));
            CHECK(r.root == static_cast<int>(b));
            CHECK(verify_decomposition(p, r));
            auto down = down_sets(r, p);
            CHECK(down[b].size() == static_cast<std::size_t>(p.vertex_count()));
        }
    }
}

TEST_CASE("topological order respects arcs") {
    DagPattern p = oriented_c4();
    auto order = topological_order(p);
    std::vector<int> pos(4);
    for (int i = 0; i < 4; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    for (auto [u, v] : p.arcs()) CHECK(pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)]);
}
