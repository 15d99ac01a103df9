#include <gtest/gtest.h>

#include <cmath>

#include "gapcert/oracle.hpp"
#include "gapcert/three_site.hpp"
#include "oracles/independent.hpp"

using namespace gapcert;

TEST(ThreeSite, DegreeTwoExactNormIsClosedForm) {
    for (int q : {2, 3, 5}) {
        for (int m = 1; m <= 6; ++m) {
            Rational best = 0;
            for (const auto &nu : partitions(2)) {
                best = std::max(best, deranged_norm_exact(nu, m, q));
            }
            EXPECT_EQ(best, oracle_ref::t2_closed_form(m, q)) << q << " " << m;
            EXPECT_EQ(t2_eigenvalue(m, q), oracle_ref::t2_closed_form(m, q));
        }
    }
}

TEST(ThreeSite, DegreeTwoBoundedByLimit) {
    for (int q : {2, 3, 4, 7}) {
        Rational limit(1, q * q + 1);
        Rational prev = 0;
        for (int m = 1; m <= 30; ++m) {
            Rational v = t2_eigenvalue(m, q);
            EXPECT_LT(v, limit);
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(ThreeSite, FloatNormMatchesExact) {
    for (int q : {2, 3}) {
        for (int m = 1; m <= 4; ++m) {
            auto b = km_subleading_bound(m, q, 2);
            EXPECT_NEAR(b.bound, oracle_ref::t2_closed_form(m, q).get_d(), 1e-10);
        }
    }
}

TEST(ThreeSite, PowerIterationMatchesDenseSingularValue) {
    for (int t = 2; t <= 4; ++t) {
        for (const auto &nu : partitions(t)) {
            MBlock block(nu, 2, t + 1);
            Eigen::MatrixXd full = block.materialize();
            const auto &der = block.deranged_rows();
            int d = block.irrep_dimension();
            for (Eigen::Index i = 0; i < full.rows(); ++i) {
                std::size_t s = static_cast<std::size_t>(i) / d;
                if (!der[s]) {
                    full.row(i).setZero();
                    full.col(i).setZero();
                }
            }
            double dense = Eigen::JacobiSVD<Eigen::MatrixXd>(full).singularValues()(0);
            double iter = deranged_norm(nu, 2, t + 1, t).value;
            EXPECT_NEAR(iter, dense, 1e-9) << nu.label() << " " << d;
        }
    }
}

TEST(ThreeSite, EigenvaluesBoundedByNorm) {
    for (int t = 2; t <= 4; ++t) {
        for (int m : {1, 3}) {
            for (const auto &nu : partitions(t)) {
                double norm = deranged_norm(nu, m, t, t).value;
                for (auto z : deranged_eigenvalues(nu, m, t)) {
                    EXPECT_LE(std::abs(z), norm + 1e-10);
                }
            }
        }
    }
}

TEST(ThreeSite, BlockEigenvaluesAppearInDirectSpectrum) {
    for (int t = 2; t <= 3; ++t) {
        for (int m = 1; m <= 2; ++m) {
            int q = 3;
            auto direct = km_direct(m, t, q);
            for (const auto &nu : partitions(t)) {
                for (auto z : deranged_eigenvalues(nu, m, q)) {
                    double best = 1e300;
                    for (auto w : direct.spectrum) {
                        best = std::min(best, std::abs(z - w));
                    }
                    EXPECT_LT(best, 1e-8) << t << " " << m << " " << nu.label() << " " << z;
                }
            }
            EXPECT_LE(direct.value, km_subleading_bound(m, q, t).bound + 1e-10);
        }
    }
}

TEST(ThreeSite, RequiresMomentAtMostLocalDimension) {
    EXPECT_THROW(km_subleading_bound(1, 2, 3), std::invalid_argument);
}

TEST(ThreeSite, HalfOperatorFloatMatchesExact) {
    for (int t = 2; t <= 4; ++t) {
        Rational Q1(27), Q2(3);
        Eigen::MatrixXd f = half_operator(t, Q1, Q2).entries;
        Eigen::MatrixXd e = half_operator_exact(t, Q1, Q2).to_double();
        EXPECT_LT((f - e).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(ThreeSite, MajorantDominatesHalfOperator) {
    for (int t = 3; t <= 5; ++t) {
        auto hbar = hbar_majorant(t);
        EXPECT_EQ(hbar.exponent, (t + 1) / 2);
        for (int q : {t, t + 1, 2 * t, 4 * t}) {
            for (int m : {1, 2, 4}) {
                Rational Q1 = rational_pow(Rational(q), m);
                EXPECT_LE(hbar_domination_margin(hbar, q, Q1, Rational(q)), 1e-12) << t << " " << q << " " << m;
            }
        }
    }
}

TEST(ThreeSite, MajorantNormsFrozen) {
    // Column-restricted norms of the majorant divided by f_t(t^-2), from an independent run.
    const double column[] = {0.196429, 0.107604, 0.0190798, 0.00866444};
    const double denominator[] = {0.938881, 0.946058, 0.952696, 0.957428};
    for (int t = 3; t <= 6; ++t) {
        auto h = hbar_majorant(t);
        EXPECT_NEAR(h.column_norm, column[t - 3], 1e-5 * column[t - 3]) << t;
        EXPECT_NEAR(h.denominator_value, denominator[t - 3], 1e-6) << t;
        EXPECT_LE(h.column_norm, h.row_norm) << t;
    }
}
