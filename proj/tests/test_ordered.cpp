#include "gradiv/error.hpp"
#include "gradiv/ordered.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

using namespace gradiv;
using gradiv::testing::make_rng;

TEST_CASE("increments differences consecutive grades") {
    CHECK(increments(GradingSample({0.0, 0.5, 1.0})) == std::vector<double>{0.5, 0.5});
    CHECK(increments(GradingSample({0.0, 1.0, 2.0, 3.0})) == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(increments(GradingSample({0.0, 0.25, 1.0})) == std::vector<double>{0.25, 0.75});
}

TEST_CASE("grading sample rejects non-grading input") {
    CHECK_THROWS_AS(GradingSample({1.0}), invalid_input);
    CHECK_THROWS_AS(GradingSample({}), invalid_input);
    CHECK_THROWS_AS(GradingSample({0.0, 1.0, 1.0}), invalid_input);
    CHECK_THROWS_AS(GradingSample({0.0, 2.0, 1.0}), invalid_input);
    CHECK_THROWS_AS(GradingSample({0.0, std::nan("")}), invalid_input);
    CHECK_THROWS_AS(GradingSample({0.0, std::numeric_limits<double>::infinity()}), invalid_input);
    CHECK_THROWS_AS(GradingSample({0.0, 1.0}, std::vector<std::string>{"a"}), invalid_input);
    CHECK_NOTHROW(GradingSample({0.0, 1.0}, std::vector<std::string>{"a", "b"}));
}

TEST_CASE("slice keeps the shared element on both sides") {
    GradingSample s({0.0, 1.0, 3.0, 6.0}, std::vector<std::string>{"a", "b", "c", "d"});
    const auto left = s.slice(0, 2);
    const auto right = s.slice(2, 3);
    CHECK(left.grades().size() == 3);
    CHECK(right.grades()[0] == 3.0);
    CHECK((*right.labels())[0] == "c");
    CHECK_THROWS_AS((void)s.slice(2, 2), invalid_input);
    CHECK_THROWS_AS((void)s.slice(0, 4), invalid_input);
}

TEST_CASE("rate_h is the log of the increment ratio") {
    CHECK(rate_h({1.0, 1.0}) == 0.0);
    CHECK(rate_h({2.0, 1.0}) == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK(rate_h({0.5, 2.0}) == doctest::Approx(-1.386294).epsilon(1e-6));
    CHECK(rate_h({2.0, 1.0}) == std::log(2.0));
}

TEST_CASE("rate_h edge cases") {
    CHECK(rate_h({0.0, 1.0}) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS((void)rate_h({1.0, 0.0}), invalid_input);
    CHECK_THROWS_AS((void)rate_h({-1.0, 1.0}), invalid_input);
    CHECK_THROWS_AS((void)rate_h({1.0, -1.0}), invalid_input);
    CHECK_THROWS_AS((void)rate_h({std::nan(""), 1.0}), invalid_input);
    // ratio overflows but the logarithm does not
    CHECK(rate_h({1e300, 1e-300}) == doctest::Approx(std::log(1e300) - std::log(1e-300)));
    CHECK(std::isfinite(rate_h({1e-300, 1e300})));
}

TEST_CASE("rate_h vanishes at identity") {
    auto rng = make_rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double s = gradiv::testing::log_uniform(rng, 1e-200, 1e200);
        REQUIRE(rate_h({s, s}) == 0.0);
    }
}

TEST_CASE("rate_h affine invariance is exact on representable increments") {
    // Draws live on a dyadic grid so a*F + b and its differences are exact;
    // the quotient then sees the same real ratio and rounds identically.
    auto rng = make_rng(2);
    std::uniform_int_distribution<std::int64_t> grade(0, (1 << 20) - 1);
    std::uniform_int_distribution<std::int64_t> scale(1, (1 << 10) - 1);
    std::uniform_int_distribution<std::int64_t> offset(-(1 << 20), 1 << 20);
    std::uniform_int_distribution<int> exponent(-20, 20);
    std::uniform_int_distribution<int> shift(0, 20);
    for (int i = 0; i < 2000; ++i) {
        const double fw = std::ldexp(static_cast<double>(grade(rng)), -10);
        const double fv = fw + std::ldexp(static_cast<double>(grade(rng) + 1), -10);
        const double gw = std::ldexp(static_cast<double>(grade(rng)), -10);
        const double gv = gw + std::ldexp(static_cast<double>(grade(rng) + 1), -10);
        // b's lowest bit sits at or above that of a*F, so every sum spans < 53 bits
        const int ea = exponent(rng);
        const double a = std::ldexp(static_cast<double>(scale(rng)), ea);
        const double b = std::ldexp(static_cast<double>(offset(rng)), ea - 10 + shift(rng));
        const double base = rate_h({gv - gw, fv - fw});
        const double moved = rate_h({(a * gv + b) - (a * gw + b), (a * fv + b) - (a * fw + b)});
        REQUIRE(base == moved);
    }
}

TEST_CASE("rate_h chain rule holds to a few ulps") {
    auto rng = make_rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double dg = gradiv::testing::log_uniform(rng, 1e-3, 1e3);
        const double df = gradiv::testing::log_uniform(rng, 1e-3, 1e3);
        const double dk = gradiv::testing::log_uniform(rng, 1e-3, 1e3);
        const double gk = rate_h({dg, dk});
        const double gf = rate_h({dg, df});
        const double fk = rate_h({df, dk});
        const double scale = std::max({std::abs(gk), std::abs(gf), std::abs(fk)});
        REQUIRE(std::abs(gk - (gf + fk)) <= 4.0 * gradiv::testing::ulp_at_scale(scale));
    }
}

TEST_CASE("increments sum to the total grade change") {
    auto rng = make_rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto grades = gradiv::testing::random_grades(rng, 2 + i % 50, -5.0);
        const auto inc = increments(GradingSample(grades));
        const double total = std::accumulate(inc.begin(), inc.end(), 0.0);
        REQUIRE(gradiv::testing::relative_error(total, grades.back() - grades.front()) <= 1e-12);
        for (double d : inc) {
            REQUIRE(d > 0.0);
        }
    }
}

TEST_CASE("position grading counts elements") {
    const auto p = position_grading(3);
    CHECK(std::vector<double>(p.grades().begin(), p.grades().end()) ==
          std::vector<double>{0.0, 1.0, 2.0, 3.0});
}
