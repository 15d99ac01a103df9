#include <gtest/gtest.h>

#include <cmath>

#include "gapcert/gap_composer.hpp"
#include "gapcert/oracle.hpp"
#include "gapcert/symmetric_group.hpp"
#include "oracles/independent.hpp"

using namespace gapcert;

namespace {

struct Case {
    int N, t, q;
};
const Case kSpectrumCases[] = {{3, 2, 2}, {4, 2, 2}, {3, 2, 3}, {3, 3, 3}};

std::size_t uniform_index(const TupleSpace &space, std::size_t tau, int first, int last, std::size_t base) {
    std::size_t idx = base;
    for (int k = first; k <= last; ++k) {
        idx -= space.digit(base, k) * space.stride(k);
        idx += tau * space.stride(k);
    }
    return idx;
}

}  // namespace

TEST(TupleSpace, IndexingRoundTrip) {
    TupleSpace s(3, 3);
    EXPECT_EQ(s.dimension(), 216u);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        auto tup = s.tuple(i);
        std::size_t back = 0;
        for (int k = 0; k < 3; ++k) {
            back += tup[k].rank() * s.stride(k);
        }
        EXPECT_EQ(back, i);
        EXPECT_EQ(s.is_complete_derangement(i), is_complete_derangement(tup));
    }
}

TEST(Oracle, BlockProjectorIsIdempotentAndFixesUniformTuples) {
    for (int t : {2, 3}) {
        for (int q : {2, 3}) {
            const int N = 3;
            auto p = block_projector(N, t, q, 0, 1);
            EXPECT_LT((p.matrix * p.matrix - p.matrix).cwiseAbs().maxCoeff(), 1e-12) << t << " " << q;
            TupleSpace space(N, t);
            if (t <= q * q) {
                for (std::size_t tau = 0; tau < space.order(); ++tau) {
                    for (std::size_t rest = 0; rest < space.order(); ++rest) {
                        std::size_t idx = uniform_index(space, tau, 0, 1, rest * space.stride(2));
                        Eigen::VectorXd col = p.matrix.col(static_cast<Eigen::Index>(idx));
                        Eigen::VectorXd e = Eigen::VectorXd::Unit(col.size(), static_cast<Eigen::Index>(idx));
                        EXPECT_LT((col - e).cwiseAbs().maxCoeff(), 1e-12);
                    }
                }
            }
        }
    }
}

TEST(Oracle, ExactProjectorIsIdempotent) {
    RationalMatrix p = block_projector_exact(3, 2, 2, 1, 2);
    EXPECT_EQ(p * p, p);
    EXPECT_LT((p.to_double() - block_projector(3, 2, 2, 1, 2).matrix).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Oracle, GateProjectsOntoUniformPairs) {
    auto g = gate_operator(3, 2, 2, 2);
    TupleSpace space(3, 2);
    for (std::size_t col = 0; col < space.dimension(); ++col) {
        for (std::size_t row = 0; row < space.dimension(); ++row) {
            double v = g.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
            if (std::abs(v) > 0) {
                EXPECT_EQ(space.digit(row, 1), space.digit(row, 2));
                EXPECT_EQ(space.digit(row, 0), space.digit(col, 0));
            }
        }
    }
}

TEST(Oracle, GateRequiresMomentAtMostLocalDimension) {
    EXPECT_THROW(gate_operator(3, 3, 2, 1), std::invalid_argument);
    EXPECT_THROW(gate_operator(3, 2, 2, 3), std::invalid_argument);
}

TEST(Oracle, StaircaseAndBrickworkAreIsospectral) {
    for (const auto &c : kSpectrumCases) {
        auto tm = transfer_matrices(c.N, c.t, c.q);
        auto a = nonzero_spectrum(tm.staircase.matrix);
        auto b = nonzero_spectrum(tm.brickwork.matrix);
        EXPECT_TRUE(multiset_equal(a, b, 1e-8)) << c.N << c.t << c.q;
        ASSERT_FALSE(a.empty());
        EXPECT_NEAR(std::abs(a.front()), 1.0, 1e-10);
    }
}

TEST(Oracle, DerangedSplit) {
    for (const auto &c : kSpectrumCases) {
        auto s = deranged_split_check(c.N, c.t, c.q);
        EXPECT_TRUE(s.passed) << c.N << c.t << c.q;
        EXPECT_TRUE(s.block_multiset) << c.N << c.t << c.q;
    }
}

TEST(Oracle, StaircaseSevFrozen) {
    // Independent run of the dense transfer matrices.
    EXPECT_NEAR(staircase_sev(3, 2, 2), 0.16, 1e-10);
    EXPECT_NEAR(staircase_sev(4, 2, 2), 0.32, 1e-10);
    EXPECT_NEAR(staircase_sev(3, 2, 3), 0.09, 1e-10);
    EXPECT_NEAR(staircase_sev(3, 3, 3), 0.09, 1e-10);
}

TEST(Oracle, KmDirectDegreeTwo) {
    EXPECT_NEAR(km_direct(1, 2, 2).value, 4.0 / 25, 1e-12);
    EXPECT_NEAR(km_direct(2, 2, 3).value, 720.0 / 7280, 1e-12);
    for (int q : {2, 3}) {
        for (int m = 1; m <= 4; ++m) {
            auto k = km_direct_exact(m, 2, q);
            ASSERT_TRUE(k.found) << q << " " << m;
            EXPECT_EQ(k.value, oracle_ref::t2_closed_form(m, q));
        }
    }
}

TEST(Oracle, KmSevMatchesThreeSite) {
    EXPECT_NEAR(km_direct(1, 3, 3).value, 0.09, 1e-10);
}

TEST(Oracle, KmOperatorExactMatchesFloat) {
    RationalMatrix e = km_operator_exact(1, 2, 2);
    EXPECT_LT((e.to_double() - km_operator(1, 2, 2).matrix).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Oracle, RightActionCommutesWithTransfer) {
    for (const auto &c : {Case{3, 2, 2}, Case{3, 3, 3}}) {
        auto tm = transfer_matrices(c.N, c.t, c.q);
        const auto &g = symmetric_group(c.t);
        for (std::size_t r = 0; r < g.order(); ++r) {
            Eigen::MatrixXd rho = right_action(c.N, c.t, g.element(r));
            EXPECT_LT((tm.staircase.matrix * rho - rho * tm.staircase.matrix).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Oracle, GateIsBlindToLowerMomentEmbedding) {
    for (int t = 3; t <= 5; ++t) {
        for (int k = 1; k < t; ++k) {
            int N = t == 3 ? 3 : 2;
            for (int site = 1; site < N; ++site) {
                EXPECT_LT(embedding_residual(N, t, k, 5, site), 1e-12) << t << " " << k << " " << site;
            }
        }
    }
}

TEST(Oracle, StaircaseBelowComposedBound) {
    for (int q : {2, 3}) {
        double g = gershgorin_bound(1.0 / (q * q + 1));
        for (int N = 3; N <= 5; ++N) {
            double sev = staircase_sev(N, 2, q);
            EXPECT_LE(sev, g + 1e-12) << N << " " << q;
            EXPECT_LE(sev, dominant_eig_A(N - 1, 1.0 / (q * q + 1)).value + 1e-12) << N << " " << q;
        }
    }
}

TEST(Oracle, DimensionCap) {
    EXPECT_THROW(transfer_matrices(6, 3, 3), std::invalid_argument);
}
