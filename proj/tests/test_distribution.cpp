#include <doctest.h>

#include <random>

#include "bnci/distribution.hpp"
#include "bnci/error.hpp"
#include "support.hpp"

using namespace bnci;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("construction keeps positive mass only") {
    const JointDist p({"a", "b"}, {2, 2},
                      {{{0, 0}, Rational(1, 2)}, {{1, 1}, Rational(1, 4)}, {{1, 1}, Rational(1, 4)}, {{0, 1}, 0}});
    CHECK(p.support_size() == 2);
    CHECK(p.exact_probability(Outcome{1, 1}) == Rational(1, 2));
    CHECK(p.exact_probability(Outcome{0, 1}) == 0);
    CHECK(p.probability(Outcome{0, 0}) == 0.5);

    CHECK(kind_of([] { JointDist({"a"}, {2}, {{{0}, Rational(1, 2)}}); }) == ErrorKind::NotNormalized);
    CHECK(kind_of([] {
              JointDist({"a"}, {2}, {{{0}, Rational(3, 2)}, {{1}, Rational(-1, 2)}});
          }) == ErrorKind::NotNormalized);
    CHECK(kind_of([] { JointDist({"a"}, {2}, {{{2}, Rational(1)}}); }) == ErrorKind::InvalidStatement);
    CHECK(kind_of([] { JointDist::uniform({"a", "b"}, {1u << 12, 1u << 13}); }) == ErrorKind::GuardExceeded);

    const JointDist approx({"a"}, {2}, std::vector<std::pair<Outcome, double>>{{{0}, 0.25}, {{1}, 0.75 + 1e-12}});
    CHECK_FALSE(approx.exact());
    CHECK(kind_of([] {
              JointDist({"a"}, {2}, std::vector<std::pair<Outcome, double>>{{{0}, 0.25}, {{1}, 0.7}});
          }) == ErrorKind::NotNormalized);
}

TEST_CASE("marginal") {
    const auto u = JointDist::uniform({"a", "b"}, {2, 2});
    CHECK(u.marginal({0}) == JointDist::uniform({"a"}, {2}));

    const auto x = testing::xor_triple();
    CHECK(x.marginal({1}) == JointDist::uniform({"V2"}, {2}));
    CHECK(x.marginal({0, 2}) == JointDist::uniform({"V1", "V3"}, {2, 2}));
    CHECK(x.marginal(x.all_variables()) == x);
    CHECK(kind_of([&] { x.marginal({}); }) == ErrorKind::EmptySet);

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = testing::random_exact({2, 3, 2}, rng, 6, 0.3);
        const auto m = p.marginal({0, 2});
        for (Value a = 0; a < 2; ++a) {
            for (Value c = 0; c < 2; ++c) {
                CHECK(m.exact_probability(Outcome{a, c}) == testing::prob_of(p, {0, 2}, {a, c}));
            }
        }
    }
}

TEST_CASE("pmf and products") {
    const auto x = testing::xor_triple();
    CHECK(exact_pmf(x, 1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(pmf(x, 0) == std::vector<double>{0.5, 0.5});

    const auto prod = JointDist::uniform({"a"}, {2}).product(JointDist::uniform({"b"}, {3}));
    CHECK(prod == JointDist::uniform({"a", "b"}, {2, 3}));
    CHECK(prod.support_size() == 6);
}

TEST_CASE("push_forward merges collisions") {
    const auto u = JointDist::uniform({"a", "b"}, {2, 2});
    const auto both = u.push_forward({"and"}, {2}, [](std::span<const Value> in, std::span<Value> out) {
        out[0] = in[0] & in[1];
    });
    CHECK(both.exact_probability(Outcome{1}) == Rational(1, 4));
    CHECK(both.exact_probability(Outcome{0}) == Rational(3, 4));
}

TEST_CASE("distribution text round trip") {
    const auto p = parse_dist("vars: a:2 b:3\n# comment\n0 0 1/2\n1 2 1/3\n1 1 0.125\n0 2 1/24\n");
    CHECK(p.exact());
    CHECK(p.cards() == std::vector<Value>{2, 3});
    CHECK(p.exact_probability(Outcome{1, 1}) == Rational(1, 8));
    CHECK(parse_dist(format_dist(p)) == p);

    // Sums that are only close to 1 load in approximate mode.
    const auto q = parse_dist("vars: a:2\n0 1/3\n1 0.6666666667\n");
    CHECK_FALSE(q.exact());
    const auto q2 = parse_dist(format_dist(q));
    CHECK(q2.approx_masses() == q.approx_masses());

    CHECK(kind_of([] { parse_dist("0 1/2\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dist("vars: a:2\n0 1/2\n0 1/2\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dist("vars: a:2\n2 1\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dist("vars: a:2 a:2\n"); }) == ErrorKind::DuplicateLabel);
    CHECK(kind_of([] { parse_dist("vars: a:2\n0 1/4\n"); }) == ErrorKind::NotNormalized);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto r = testing::random_exact({3, 2, 2}, rng, 9, 0.4);
        CHECK(parse_dist(format_dist(r)) == r);
    }
}
