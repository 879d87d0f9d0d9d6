#include <doctest.h>

#include <cmath>
#include <limits>

#include "qmzv/qarith.hpp"

using namespace qmzv;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

TEST_CASE("q_int basic values") {
    const QParam qp(0.5);
    CHECK(q_int(1, qp) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q_int(3, qp) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(q_int(-2, qp) == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK_THROWS_AS(q_int(0, qp), std::invalid_argument);
}

TEST_CASE("q_int large k uses the closed form consistently") {
    const QParam qp(0.9);
    // Horner (k = 64) and closed form (k = 65) must agree across the switch.
    const double direct = (1.0 - std::pow(0.9, 65)) / 0.1;
    CHECK(q_int(65, qp) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(q_int(64, qp) == doctest::Approx((1.0 - std::pow(0.9, 64)) / 0.1).epsilon(1e-13));
}

TEST_CASE("QParam invariants") {
    CHECK_THROWS_AS(QParam(0.0), std::invalid_argument);
    CHECK_THROWS_AS(QParam(1.0), std::invalid_argument);
    CHECK_THROWS_AS(QParam(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(QParam(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(QParam(0.5, 1e-9, 0), std::invalid_argument);
}

TEST_CASE("q-integers are increasing and bounded by 1/(1-q)") {
    for (double q : {0.3, 0.5, 0.9}) {
        const QParam qp(q);
        double prev = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const double v = q_int(k, qp);
            // strictly increasing until the increment q^{k-1} falls below
            // one ulp of the running value, then saturated
            if (std::pow(q, k - 1) > 4 * kEps * prev)
                CHECK(v > prev);
            else
                CHECK(v >= prev);
            CHECK(v >= 1.0);
            CHECK(v < 1.0 / (1.0 - q));
            prev = v;
        }
    }
}

TEST_CASE("negative-argument identity [-k] = -q^{-k}[k]") {
    for (double q : {0.3, 0.5, 0.9}) {
        const QParam qp(q);
        for (int k = 1; k <= 20; ++k) {
            const double lhs = q_int(-k, qp);
            const double rhs = -std::pow(q, -k) * q_int(k, qp);
            CHECK(std::abs(lhs - rhs) <= 4 * kEps * std::abs(rhs) * std::pow(q, -k));
        }
    }
}

TEST_CASE("[k](1-q) + q^k = 1 to rounding") {
    for (double q : {0.2, 0.5, 0.8, 0.95}) {
        const QParam qp(q);
        for (int k = 1; k <= 50; ++k) {
            const double v = q_int(k, qp) * (1.0 - q) + std::pow(q, k);
            CHECK(std::abs(v - 1.0) <= 4 * kEps * (1.0 + q_int(k, qp)));
        }
    }
}

TEST_CASE("q_int_limit_check probes the q -> 1 limit") {
    const std::vector<QParam> seq = {QParam(0.9), QParam(0.99), QParam(0.999)};

    SUBCASE("k = 3 deviations strictly decrease") {
        const auto dev = q_int_limit_check(3, seq);
        REQUIRE(dev.size() == 3);
        CHECK(dev[0] > dev[1]);
        CHECK(dev[1] > dev[2]);
    }
    SUBCASE("k = 1 is exact at any q") {
        for (double d : q_int_limit_check(1, seq)) CHECK(d == 0.0);
    }
    SUBCASE("k = 5 at q = 0.99") {
        const auto dev = q_int_limit_check(5, {QParam(0.99)});
        CHECK(dev[0] == doctest::Approx(0.09900499).epsilon(1e-9));
    }
    SUBCASE("non-increasing q sequence is rejected") {
        CHECK_THROWS_AS(q_int_limit_check(3, {QParam(0.9), QParam(0.9)}),
                        std::invalid_argument);
    }
}

TEST_CASE("CertifiedValue budget model") {
    CertifiedValue v{{2.0, 0.0}, 1e-12, 1000};
    CHECK(v.rounding_slack() == doctest::Approx(1000 * 8 * kEps * 2.0));
    CHECK(v.budget() == doctest::Approx(1e-12 + v.rounding_slack()));
    CHECK(v.real() == 2.0);
}
