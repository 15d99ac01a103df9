#include <gtest/gtest.h>

#include <cmath>

#include "gapcert/derangement_poly.hpp"
#include "gapcert/permutation.hpp"
#include "oracles/independent.hpp"

using namespace gapcert;

namespace {

IntPolynomial from_longs(const std::vector<long> &c) {
    std::vector<Integer> v;
    for (long x : c) {
        v.emplace_back(x);
    }
    return IntPolynomial(v);
}

}  // namespace

TEST(DerangementPoly, ProductFormEqualsBruteForce) {
    for (int t = 1; t <= 8; ++t) {
        EXPECT_EQ(dt_productform(t), dt_bruteforce(t)) << t;
    }
}

TEST(DerangementPoly, BruteForceMatchesIndependentEnumeration) {
    for (int t = 1; t <= 6; ++t) {
        EXPECT_EQ(dt_bruteforce(t), from_longs(oracle_ref::derangement_polynomial(t))) << t;
    }
}

TEST(DerangementPoly, SmallCases) {
    EXPECT_EQ(dt_productform(2), from_longs({0, 2}));
    EXPECT_EQ(dt_productform(3), from_longs({0, 0, 10, 0, 2}));
}

TEST(DerangementPoly, ValueAtOneCountsPairs) {
    for (int t = 1; t <= 20; ++t) {
        Integer expect = Integer(static_cast<unsigned long>(oracle_ref::subfactorial(t))) *
                         Integer(static_cast<unsigned long>(factorial(t)));
        EXPECT_EQ(dt_productform(t).evaluate(Integer(1)), expect) << t;
    }
}

TEST(DerangementPoly, LengthGeneratingFunction) {
    for (int t = 1; t <= 7; ++t) {
        auto dist = oracle_ref::transposition_distances(t);
        std::vector<long> c(t, 0);
        for (const auto &[p, d] : dist) {
            ++c[d];
        }
        EXPECT_EQ(length_generating_function(t), from_longs(c));
    }
}

TEST(DerangementPoly, SevenAtInverseSquare) {
    double v = dt_at_inverse_tsquared(7).value_double;
    auto three_figures = [](double x) {
        double scale = std::pow(10.0, std::floor(std::log10(x)) - 2);
        return std::round(x / scale) * scale;
    };
    EXPECT_EQ(three_figures(v), three_figures(1.013e-3));
    EXPECT_NEAR(v, 1.0123817e-3, 1e-10);
    // The listed four-figure value is a valid upper bound.
    EXPECT_LE(v, 1.013e-3);
}

TEST(DerangementPoly, MonotoneDecreasingFromSevenToThirtyTwo) {
    double prev = dt_at_inverse_tsquared(7).value_double;
    for (int t = 8; t <= 32; ++t) {
        double v = dt_at_inverse_tsquared(t).value_double;
        EXPECT_LT(v, prev) << t;
        prev = v;
    }
}

TEST(DerangementPoly, UniformConstant) {
    double worst = 0.0;
    for (int t = 7; t <= 28; ++t) {
        auto d = dt_at_inverse_tsquared(t);
        EXPECT_EQ(d.scaled, d.value * t * t);
        worst = std::max(worst, d.scaled_double);
    }
    EXPECT_LE(worst, kDtNumericalConstantUpper);
    EXPECT_NEAR(worst, kDtNumericalConstant, 5e-5);
    EXPECT_NEAR(worst, 0.0496067, 1e-7);
    EXPECT_LE(std::exp(2.0) * kDtNumericalConstant, 0.367);
    EXPECT_LE(std::exp(2.0) * kDtNumericalConstantUpper, 0.367);
}

TEST(DerangementPoly, AnalyticCoefficient) {
    double t = 29.0;
    double expect = t * t / 2 * std::exp(1 / (2 * t * t)) * (std::pow(0.5 + 3 / t, t) + std::pow(4 / std::sqrt(t), t));
    EXPECT_NEAR(dt_analytic_coefficient(29), expect, 1e-15 * expect);
    EXPECT_NEAR(dt_analytic_bound(29, 29), expect / (29.0 * 29.0), 1e-15);
    EXPECT_LT(dt_analytic_coefficient(29), 0.0496 * 29 * 29);
}

TEST(DerangementPoly, AnalyticBoundDominatesExactValue) {
    for (int t = 29; t <= 40; ++t) {
        for (int q : {t, t + 3, 2 * t}) {
            double exact = dt_productform(t).evaluate(Rational(1, q * q)).get_d();
            EXPECT_LE(exact, dt_analytic_bound(t, q) * (1 + 1e-12)) << t << " " << q;
        }
    }
}

TEST(DerangementPoly, FrobeniusBoundDominatesRestrictedNorm) {
    for (int t = 2; t <= 6; ++t) {
        for (int q : {t, t + 1, 2 * t}) {
            double bound = dc_frobenius_bound(t, q);
            double actual = dc_restricted_frobenius(t, std::pow(q, 3.0), q);
            EXPECT_LE(actual, bound * (1 + 1e-12)) << t << " " << q;
            EXPECT_NEAR(dc_restricted_frobenius(t, q, q), bound, 1e-11 * bound);
        }
    }
}

TEST(DerangementPoly, KBoundRegimes) {
    EXPECT_NEAR(k_bound_from_dt(7, 7, DtRegime::numerical), std::exp(2.0) * kDtNumericalConstantUpper / 49.0, 1e-15);
    EXPECT_NEAR(k_bound_from_dt(30, 30, DtRegime::analytic), std::exp(2.0) * dt_analytic_bound(30, 30), 1e-15);
}
