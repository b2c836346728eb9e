#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "coincide/comparison.hpp"
#include "coincide/errors.hpp"

using coincide::ComparisonFunction;

namespace {

double ulp_of(double x) {
    return std::nextafter(std::abs(x), std::numeric_limits<double>::infinity()) - std::abs(x);
}

// Table through the knots of t / (1 + t) at t = 1/k; the iterates from 1
// then walk the knots exactly: psi^n(1) = 1/(n+1).
ComparisonFunction harmonic_table(int knot_count) {
    std::vector<ComparisonFunction::Knot> knots;
    for (int k = knot_count; k >= 1; --k) {
        knots.push_back({1.0 / k, 1.0 / (k + 1)});
    }
    return ComparisonFunction::table(std::move(knots));
}

}  // namespace

TEST_CASE("linear iteration follows the closed form") {
    auto psi = ComparisonFunction::linear(0.8);
    CHECK(psi.iterate(0, 1.0) == 1.0);
    CHECK(psi.iterate(3, 1.0) == doctest::Approx(0.512).epsilon(1e-15));

    // n-fold application stays within 4 ulp of lambda^n * t.
    for (double lambda : {0.1, 0.5, 0.8, 0.99}) {
        auto p = ComparisonFunction::linear(lambda);
        for (int n : {1, 2, 5, 10, 20, 30}) {
            for (double t : {0.1, 1.0, 10.0}) {
                double expected = std::pow(lambda, n) * t;
                CHECK(std::abs(p.iterate(n, t) - expected) <= 4.0 * ulp_of(expected));
            }
        }
    }
}

TEST_CASE("table iteration composes through the knots") {
    // psi(t) = t/(1+t) sampled at the points the iterates visit.
    auto psi = ComparisonFunction::table({{0.5, 1.0 / 3.0}, {1.0, 0.5}});
    CHECK(psi.iterate(2, 1.0) == 1.0 / 3.0);

    auto dense = harmonic_table(2001);
    for (int n = 0; n <= 50; ++n) {
        CHECK(dense.iterate(n, 1.0) == 1.0 / (n + 1));
    }
}

TEST_CASE("table evaluation interpolates, extrapolates and clamps") {
    auto psi = ComparisonFunction::table({{1.0, 0.5}, {2.0, 1.9}});
    CHECK(psi.eval(0.0) == 0.0);
    CHECK(psi.eval(0.5) == doctest::Approx(0.25));   // segment from the (0,0) anchor
    CHECK(psi.eval(1.5) == doctest::Approx(1.2));    // between knots
    // Last segment slope is 1.4; the raw extrapolation 1.9 + 1.4*8 = 13.1
    // exceeds t and is clamped just below it.
    CHECK(psi.eval(10.0) == doctest::Approx(10.0 * (1.0 - 1e-9)));

    CHECK_THROWS_AS(ComparisonFunction::table({{1.0, 0.5}, {0.5, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(ComparisonFunction::table({{1.0, 0.5}, {2.0, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(ComparisonFunction::linear(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ComparisonFunction::linear(0.0), std::invalid_argument);
}

TEST_CASE("tail bounds match the geometric series") {
    auto psi = ComparisonFunction::linear(0.8);
    double five = psi.tail_bound(0, 1.0);
    CHECK(std::abs(five - 5.0) <= 4.0 * ulp_of(5.0));
    CHECK(psi.tail_bound(2, 1.0) == doctest::Approx(3.2).epsilon(1e-15));

    // 1 - 0.5 is exact in binary, so this one comes out exactly.
    CHECK(ComparisonFunction::linear(0.5).tail_bound(0, 2.0) == 4.0);
}

TEST_CASE("tail bound dominates every partial sum and shrinks with n") {
    std::vector<ComparisonFunction> candidates;
    for (double lambda : {0.3, 0.8, 0.95}) {
        candidates.push_back(ComparisonFunction::linear(lambda));
    }
    // Collinear knots of 0.6 t: a genuinely geometric table.
    candidates.push_back(ComparisonFunction::table({{1.0, 0.6}, {2.0, 1.2}, {10.0, 6.0}}));

    for (const auto& psi : candidates) {
        for (double t : {0.5, 1.0, 7.0}) {
            for (int n : {0, 1, 3}) {
                double bound = psi.tail_bound(n, t);
                double partial = 0.0;
                for (int p = n; p < n + 200; ++p) {
                    partial += psi.iterate(p, t);
                    CHECK(partial <= bound * (1.0 + 1e-12));
                }
                CHECK(psi.tail_bound(n + 1, t) <= bound * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("membership accepts linear slopes across the whole unit range") {
    std::vector<double> samples = {0.1, 1.0, 10.0};
    for (int i = 1; i <= 99; ++i) {
        auto psi = ComparisonFunction::linear(i / 100.0);
        CHECK(psi.check_membership(samples).passed);
    }
}

TEST_CASE("membership rejects the identity table") {
    auto psi = ComparisonFunction::table({{1.0, 1.0}});
    std::vector<double> samples = {1.0};
    auto result = psi.check_membership(samples);
    CHECK_FALSE(result.passed);
    CHECK(result.reason == "psi(t) < t violated");
}

TEST_CASE("membership rejects harmonic-type decay as non-summable") {
    auto psi = harmonic_table(2001);
    std::vector<double> samples = {1.0};
    auto result = psi.check_membership(samples);
    CHECK_FALSE(result.passed);
    CHECK(result.reason == "NonSummable");

    CHECK_THROWS_AS(psi.tail_bound(0, 1.0), coincide::non_summable);
}

TEST_CASE("membership requires samples") {
    auto psi = ComparisonFunction::linear(0.5);
    std::vector<double> none;
    CHECK_THROWS_AS(psi.check_membership(none), std::invalid_argument);
}
