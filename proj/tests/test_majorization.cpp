#include <doctest.h>

#include <random>

#include "bnci/error.hpp"
#include "bnci/majorization.hpp"

using namespace bnci;

TEST_CASE("majorization examples") {
    const Rational h(1, 2), q(1, 4);
    CHECK(majorizes(std::vector<Rational>{h, h}, std::vector<Rational>{q, q, q, q}) == MajorizationOrder::AOverB);
    CHECK(majorizes(std::vector<Rational>{q, q, q, q}, std::vector<Rational>{h, h}) == MajorizationOrder::BOverA);
    CHECK(majorizes(std::vector<double>{0.6, 0.4}, std::vector<double>{0.5, 0.5}) == MajorizationOrder::AOverB);
    CHECK(majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{0.6, 0.2, 0.2}) == MajorizationOrder::Neither);
    CHECK(majorizes(std::vector<Rational>{q, Rational(3, 4)}, std::vector<Rational>{Rational(3, 4), 0, q}) ==
          MajorizationOrder::Both);
    CHECK(to_string(MajorizationOrder::AOverB) == "A_over_B");
    CHECK(to_string(MajorizationOrder::Neither) == "neither");
}

TEST_CASE("majorization rejects non-distributions") {
    CHECK_THROWS_AS(majorizes(std::vector<Rational>{Rational(1, 2)}, std::vector<Rational>{1}), Error);
    CHECK_THROWS_AS(majorizes(std::vector<Rational>{Rational(3, 2), Rational(-1, 2)}, std::vector<Rational>{1}),
                    Error);
    CHECK_THROWS_AS(majorizes(std::vector<double>{0.5, 0.6}, std::vector<double>{1.0}), Error);
}

TEST_CASE("point mass majorizes and uniform is majorized") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng() % 5;
        std::vector<Rational> p;
        Rational total = 0;
        for (std::size_t i = 0; i < k; ++i) {
            p.emplace_back(static_cast<unsigned long>(rng() % 7));
            total += p.back();
        }
        if (total == 0) continue;
        for (auto& x : p) x /= total;
        const auto order_point = majorizes(std::vector<Rational>{1}, p);
        CHECK((order_point == MajorizationOrder::AOverB || order_point == MajorizationOrder::Both));
        const auto order_uniform = majorizes(p, std::vector<Rational>(k, Rational(1, k)));
        CHECK((order_uniform == MajorizationOrder::AOverB || order_uniform == MajorizationOrder::Both));
    }
}
