#include <doctest.h>

#include <random>

#include "bnci/dsep.hpp"
#include "bnci/error.hpp"
#include "bnci/independence.hpp"
#include "bnci/sampling.hpp"
#include "support.hpp"

using namespace bnci;

namespace {

JointDist copy_last(const JointDist& p) {
    auto labels = p.labels();
    auto cards = p.cards();
    labels.push_back("copy");
    cards.push_back(cards.back());
    const auto n = p.variable_count();
    return p.push_forward(labels, cards, [n](std::span<const Value> in, std::span<Value> out) {
        std::copy(in.begin(), in.end(), out.begin());
        out[n] = in[n - 1];
    });
}

}  // namespace

TEST_CASE("check_ci examples") {
    const auto u = JointDist::uniform({"a", "b"}, {2, 2});
    const auto v = check_ci(u, CiStatement({0}, {}, {1}));
    CHECK(v.holds);
    CHECK(v.residual == 0.0);

    const auto x = testing::xor_triple();
    CHECK(check_ci(x, CiStatement({0}, {}, {1})));
    CHECK_FALSE(check_ci(x, CiStatement({0}, {2}, {1})));
    CHECK_FALSE(check_ci(x, CiStatement({0, 2}, {}, {1})));
    // p(0,0,0) p(v3=0) = 1/8 against p(0,0) p(0,0) = 1/16.
    CHECK(check_ci(x, CiStatement({0}, {2}, {1})).residual == 0.0625);
    CHECK_THROWS_AS(check_ci(x, CiStatement({0}, {}, {3})), Error);
}

TEST_CASE("check_ci agrees with dense enumeration") {
    std::mt19937_64 rng(21);
    const std::vector<CiStatement> stmts{CiStatement({0}, {}, {1}), CiStatement({0}, {2}, {1}),
                                         CiStatement({0, 1}, {}, {2}), CiStatement({1}, {0, 3}, {2}),
                                         CiStatement({3}, {1}, {0, 2})};
    for (int trial = 0; trial < 80; ++trial) {
        // Mix of generic tables, sparse tables and sampled factorizations
        // where many statements hold exactly.
        JointDist p = trial % 2 ? testing::random_exact({2, 2, 3, 2}, rng, 3, 0.5)
                                : sample_factorized_exact(testing::random_dag(4, rng), {2, 2, 3, 2}, rng(), 3);
        for (const auto& s : stmts) {
            const bool expected = testing::ci_by_enumeration(p, s.a(), s.c(), s.b());
            const auto got = check_ci(p, s);
            CHECK(got.holds == expected);
            CHECK((got.residual == 0.0) == expected);
            CHECK(check_ci(p, s.swapped()).holds == got.holds);
            CHECK(check_ci(p, s.swapped()).residual == got.residual);
        }
    }
}

TEST_CASE("check_mutual_independence") {
    CHECK(check_mutual_independence(JointDist::uniform({"a", "b", "c"}, {2, 2, 2}), {0, 1, 2}));
    const auto x = testing::xor_triple();
    CHECK_FALSE(check_mutual_independence(x, {0, 1, 2}));
    CHECK(check_mutual_independence(x, {0, 1}));
    try {
        check_mutual_independence(x, {0});
        FAIL("expected SetTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SetTooSmall);
    }
}

TEST_CASE("check_fd") {
    const auto x = testing::xor_triple();
    CHECK(check_fd(x, {0, 2}, 1));
    CHECK(check_fd(x, {0, 2}, 1).residual == 0.0);
    CHECK_FALSE(check_fd(JointDist::uniform({"a", "b"}, {2, 2}), {0}, 1));
    CHECK(check_fd(JointDist::uniform({"a", "b"}, {2, 2}), {0}, 1).residual == doctest::Approx(0.5));
    const auto c = copy_last(x);
    CHECK(check_fd(c, {2}, 3));
    CHECK(check_fd(c, {3}, 2));
    try {
        check_fd(x, {0, 1}, 1);
        FAIL("expected IndexOverlap");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOverlap);
    }
}

TEST_CASE("satisfies_network") {
    std::mt19937_64 rng(4);
    const auto u = JointDist::uniform({"a", "b", "c", "d"}, {2, 3, 2, 2});
    for (int trial = 0; trial < 20; ++trial) CHECK(satisfies_network(u, testing::random_dag(4, rng)));

    const auto x = testing::xor_triple();
    CHECK(satisfies_network(x, Dag(3, {{0, 1}, {2, 1}})));
    CHECK_FALSE(satisfies_network(x, Dag::edgeless(3)));
    CHECK_THROWS_AS(satisfies_network(x, Dag::edgeless(2)), Error);
}

TEST_CASE("sample_factorized") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = testing::random_dag(2 + trial % 5, rng);
        std::vector<Value> cards(g.node_count());
        for (auto& c : cards) c = 2 + static_cast<Value>(rng() % 2);
        const auto p = sample_factorized(g, cards, 100 + trial);
        CHECK_FALSE(p.exact());
        CHECK(p == sample_factorized(g, cards, 100 + trial));
        const auto v = satisfies_network(p, g);
        CHECK(v.holds);
        CHECK(v.residual < 1e-12);

        const auto e = sample_factorized_exact(g, cards, 100 + trial);
        CHECK(e.exact());
        CHECK(satisfies_network(e, g).residual == 0.0);
    }
    const auto edgeless = sample_factorized(Dag::edgeless(4), {2, 2, 3, 2}, 5);
    CHECK(check_mutual_independence(edgeless, edgeless.all_variables()));
    CHECK_FALSE(sample_factorized(Dag::edgeless(2), {2, 2}, 1) == sample_factorized(Dag::edgeless(2), {2, 2}, 2));
    CHECK_THROWS_AS(sample_factorized(Dag::edgeless(2), {1u << 13, 1u << 12}, 1), Error);
}

TEST_CASE("d-separated triples hold in sampled distributions") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = testing::random_dag(5, rng);
        const auto p = sample_factorized_exact(g, std::vector<Value>(5, 2), rng(), 5);
        for (const auto& s : implied_ci_set(g)) CHECK(check_ci(p, s).residual == 0.0);
    }
}
