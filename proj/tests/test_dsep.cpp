#include <doctest.h>

#include <random>

#include "bnci/dag.hpp"
#include "bnci/dsep.hpp"
#include "bnci/error.hpp"
#include "support.hpp"

using namespace bnci;

namespace {

// Every disjoint (A, B, C) with A, B nonempty over n <= 5 nodes, as masks.
template <class F>
void for_each_triple(std::size_t n, F&& f) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t a = 1; a <= full; ++a) {
        for (std::uint64_t b = 1; b <= full; ++b) {
            if (a & b) continue;
            const std::uint64_t rest = full & ~(a | b);
            for (std::uint64_t c = rest;; c = (c - 1) & rest) {
                f(NodeSet::from_mask(a), NodeSet::from_mask(b), NodeSet::from_mask(c));
                if (c == 0) break;
            }
        }
    }
}

}  // namespace

TEST_CASE("d_separated examples") {
    const auto chain = testing::chain(3);
    CHECK(d_separated(chain, {0}, {2}, {1}));
    CHECK_FALSE(d_separated(chain, {0}, {2}, {}));

    const Dag collider(3, {{0, 2}, {1, 2}});
    CHECK(d_separated(collider, {0}, {1}, {}));
    CHECK_FALSE(d_separated(collider, {0}, {1}, {2}));

    const auto g = single_ci_network(4, CiStatement({0, 3}, {}, {1, 2}));
    CHECK(d_separated(g, CiStatement({0, 3}, {}, {1, 2})));

    // Conditioning on a descendant of a collider opens it.
    const Dag with_child(4, {{0, 2}, {1, 2}, {2, 3}});
    CHECK_FALSE(d_separated(with_child, {0}, {1}, {3}));
}

TEST_CASE("d_separated rejects bad sets") {
    const auto g = testing::chain(3);
    CHECK_THROWS_AS(d_separated(g, {0}, {0}, {}), Error);
    try {
        d_separated(g, {0}, {2}, {0});
        FAIL("expected OverlappingSets");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OverlappingSets);
    }
    try {
        d_separated(g, {}, {2}, {});
        FAIL("expected InvalidStatement");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidStatement);
    }
}

TEST_CASE("reachability, moral graph and path enumeration agree on all small dags") {
    // Exhaustive over edge subsets of the order 0 < 1 < ... < n-1, n <= 4
    // (the n = 5 sweep runs in the acceptance binary).
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<Edge> pairs;
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        }
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
            std::vector<Edge> edges;
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                if (bits >> e & 1) edges.push_back(pairs[e]);
            }
            const Dag g(n, edges);
            for_each_triple(n, [&](const NodeSet& a, const NodeSet& b, const NodeSet& c) {
                const bool expected = testing::dsep_by_paths(g, a, b, c);
                REQUIRE(d_separated(g, a, b, c) == expected);
                REQUIRE(d_separated_moral(g, a, b, c) == expected);
            });
        }
    }
}

TEST_CASE("d_connected never returns the given sets") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = testing::random_dag(6, rng);
        const auto reach = d_connected(g, {0, 1}, {2});
        CHECK_FALSE(reach.contains(0));
        CHECK_FALSE(reach.contains(1));
        CHECK_FALSE(reach.contains(2));
    }
}

TEST_CASE("implied_ci_set examples") {
    CHECK(implied_ci_set(Dag::edgeless(2)) == CiSet{CiStatement({0}, {}, {1})});
    CHECK(implied_ci_set(Dag(2, {{0, 1}})).empty());
    const auto chain = implied_ci_set(testing::chain(3));
    CHECK(chain.contains(CiStatement({0}, {1}, {2})));
    CHECK_FALSE(chain.contains(CiStatement({0}, {}, {2})));
    CHECK(chain.size() == 1);
    CHECK_THROWS_AS(implied_ci_set(Dag::edgeless(11)), Error);
}

TEST_CASE("implied_ci_set properties on random dags") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = testing::random_dag(2 + trial % 4, rng, 0.5);
        const auto implied = implied_ci_set(g);
        CHECK(local_ci_set(g).is_subset_of(implied));
        for (const auto& e : g.edges()) CHECK(implied.is_subset_of(implied_ci_set(g.without_edge(e))));
    }
}

TEST_CASE("inclusion_implies") {
    const auto chain = testing::chain(3);
    const Dag reversed(3, {{2, 1}, {1, 0}});
    CHECK(inclusion_implies(chain, reversed));
    CHECK(inclusion_implies(reversed, chain));
    CHECK(inclusion_implies(Dag::edgeless(2), Dag(2, {{0, 1}})));
    CHECK_FALSE(inclusion_implies(Dag(2, {{0, 1}}), Dag::edgeless(2)));
    // A v-structure is not equivalent to the chain.
    CHECK_FALSE(inclusion_implies(Dag(3, {{0, 1}, {2, 1}}), chain));
    try {
        inclusion_implies(chain, Dag::edgeless(2));
        FAIL("expected NodeCountMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NodeCountMismatch);
    }
}
