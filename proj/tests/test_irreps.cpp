#include <gtest/gtest.h>

#include "gapcert/irreps.hpp"
#include "gapcert/symmetric_group.hpp"

using namespace gapcert;

TEST(Tableaux, CountEqualsHookDimension) {
    for (int t = 1; t <= 7; ++t) {
        for (const auto &nu : partitions(t)) {
            EXPECT_EQ(standard_tableaux(nu).size(), nu.hook_dimension()) << nu.label();
        }
    }
}

TEST(YoungOrthogonalForm, IsAnOrthogonalHomomorphism) {
    for (int t = 2; t <= 5; ++t) {
        const auto &g = symmetric_group(t);
        for (const auto &nu : partitions(t)) {
            const auto &rep = irrep(nu);
            EXPECT_LT(rep.orthogonality_residual(), 1e-12);
            for (std::size_t i = 0; i < g.order(); i += 3) {
                for (std::size_t j = 0; j < g.order(); j += 5) {
                    Eigen::MatrixXd lhs = rep.matrix(g.product(i, j));
                    Eigen::MatrixXd rhs = rep.matrix(i) * rep.matrix(j);
                    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
                }
            }
        }
    }
}

TEST(YoungOrthogonalForm, GeneratorsSatisfyCoxeterRelations) {
    for (const auto &nu : partitions(6)) {
        const auto &rep = irrep(nu);
        int d = rep.dimension();
        Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
        for (int k = 0; k + 1 < 6; ++k) {
            const auto &s = rep.generator(k);
            EXPECT_LT((s * s - id).cwiseAbs().maxCoeff(), 1e-12);
            if (k + 2 < 6) {
                const auto &u = rep.generator(k + 1);
                EXPECT_LT((s * u * s - u * s * u).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(Characters, TracesMatchMurnaghanNakayama) {
    for (int t = 1; t <= 6; ++t) {
        auto classes = conjugacy_classes(t);
        for (const auto &nu : partitions(t)) {
            const auto &rep = irrep(nu);
            for (std::size_t c = 0; c < classes.size(); ++c) {
                double tr = rep.matrix(classes[c].representative).trace();
                EXPECT_NEAR(tr, character(nu, classes[c].cycle_type).get_d(), 1e-10);
                EXPECT_EQ(rep.characters()[c], character(nu, classes[c].cycle_type));
            }
        }
    }
}

TEST(Characters, RowOrthogonality) {
    for (int t = 1; t <= 8; ++t) {
        auto classes = conjugacy_classes(t);
        auto parts = partitions(t);
        for (const auto &a : parts) {
            for (const auto &b : parts) {
                Integer s = 0;
                for (const auto &c : classes) {
                    s += Integer(static_cast<unsigned long>(c.size)) * character(a, c.cycle_type) *
                         character(b, c.cycle_type);
                }
                EXPECT_EQ(s, a == b ? Integer(static_cast<unsigned long>(factorial(t))) : Integer(0));
            }
        }
    }
}

TEST(Characters, KnownValues) {
    EXPECT_EQ(character(Partition({2, 1}), Partition({3})), -1);
    EXPECT_EQ(character(Partition({2, 1}), Partition({2, 1})), 0);
    EXPECT_EQ(character(Partition({3, 1}), Partition({2, 2})), -1);
    EXPECT_EQ(character(Partition({2, 2}), Partition({3, 1})), -1);
    EXPECT_EQ(character(Partition({1, 1, 1, 1}), Partition({2, 1, 1})), -1);
}

TEST(Schur, OrthogonalityUpToDegreeFive) {
    for (int t = 1; t <= 5; ++t) {
        auto parts = partitions(t);
        for (const auto &a : parts) {
            for (const auto &b : parts) {
                auto r = schur_orthogonality_check(a, b);
                EXPECT_TRUE(r.passed) << a.label() << " " << b.label() << " " << r.max_deviation;
            }
        }
    }
}

TEST(Idempotents, ArePairwiseOrthogonalProjectorsSummingToIdentity) {
    for (int t = 2; t <= 4; ++t) {
        const auto &g = symmetric_group(t);
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(g.order(), g.order());
        std::vector<Eigen::MatrixXd> ps;
        for (const auto &nu : partitions(t)) {
            ps.push_back(canonical_idempotent(nu).matrix(g));
            sum += ps.back();
        }
        EXPECT_LT((sum - Eigen::MatrixXd::Identity(g.order(), g.order())).cwiseAbs().maxCoeff(), 1e-12);
        for (std::size_t a = 0; a < ps.size(); ++a) {
            for (std::size_t b = 0; b < ps.size(); ++b) {
                Eigen::MatrixXd expect = a == b ? ps[a] : Eigen::MatrixXd::Zero(g.order(), g.order());
                EXPECT_LT((ps[a] * ps[b] - expect).cwiseAbs().maxCoeff(), 1e-12);
            }
            auto nu = partitions(t)[a];
            EXPECT_NEAR(ps[a].trace(), static_cast<double>(nu.hook_dimension() * nu.hook_dimension()), 1e-10);
        }
    }
}

TEST(Idempotents, ClassValuesAreConstantOnClasses) {
    const int t = 5;
    const auto &g = symmetric_group(t);
    for (const auto &nu : partitions(t)) {
        Eigen::MatrixXd p = canonical_idempotent(nu).matrix(g);
        for (std::size_t i = 0; i < g.order(); ++i) {
            for (std::size_t j = 0; j < g.order(); j += 7) {
                std::size_t r = g.relative(i, j);
                EXPECT_NEAR(p(i, j), p(0, r), 1e-13);
                std::size_t conj = g.product(g.product(j, r), g.inverse(j));
                EXPECT_NEAR(p(0, r), p(0, conj), 1e-13);
            }
        }
    }
}

TEST(Irreps, OneDimensionalSignValues) {
    const int t = 5;
    const auto &g = symmetric_group(t);
    const auto &sign = irrep(Partition({1, 1, 1, 1, 1}));
    const auto &triv = irrep(Partition({5}));
    for (std::size_t i = 0; i < g.order(); ++i) {
        int expect = g.length(i) % 2 == 0 ? 1 : -1;
        EXPECT_EQ(sign.sign_value(g.element(i)), expect);
        EXPECT_EQ(triv.sign_value(g.element(i)), 1);
        EXPECT_NEAR(sign.matrix(i)(0, 0), expect, 1e-14);
    }
}
