#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gapcert/permutation.hpp"
#include "gapcert/symmetric_group.hpp"
#include "oracles/independent.hpp"

using namespace gapcert;

TEST(Permutation, ComposeAppliesRightFactorFirst) {
    Permutation a({1, 2, 0});
    Permutation b({1, 0, 2});
    Permutation c = a * b;
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(c[i], a[b[i]]);
    }
}

TEST(Permutation, RankRoundTrip) {
    for (int t = 1; t <= 6; ++t) {
        for (std::uint64_t r = 0; r < factorial(t); ++r) {
            EXPECT_EQ(Permutation::unrank(t, r).rank(), r);
        }
    }
}

TEST(Permutation, LengthMatchesCayleyGraphDistance) {
    for (int t = 1; t <= 6; ++t) {
        auto dist = oracle_ref::transposition_distances(t);
        for (const auto &[p, d] : dist) {
            EXPECT_EQ(Permutation(p).length(), d);
        }
    }
}

TEST(Permutation, CayleyDistanceIsAMetric) {
    const int t = 4;
    const auto &g = symmetric_group(t);
    for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t b = 0; b < g.order(); ++b) {
            int dab = cayley_distance(g.element(a), g.element(b));
            EXPECT_EQ(dab, cayley_distance(g.element(b), g.element(a)));
            EXPECT_EQ(dab == 0, a == b);
            for (std::size_t c = 0; c < g.order(); ++c) {
                EXPECT_LE(dab, cayley_distance(g.element(a), g.element(c)) +
                                   cayley_distance(g.element(c), g.element(b)));
            }
        }
    }
}

TEST(Permutation, DistanceIsInvariantUnderBothActions) {
    const int t = 5;
    const auto &g = symmetric_group(t);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int n = 0; n < 500; ++n) {
        const auto &a = g.element(pick(rng));
        const auto &b = g.element(pick(rng));
        const auto &r = g.element(pick(rng));
        int d = cayley_distance(a, b);
        EXPECT_EQ(cayley_distance(r * a, r * b), d);
        EXPECT_EQ(cayley_distance(a * r, b * r), d);
    }
}

TEST(SymmetricGroup, DerangementCounts) {
    for (int t = 1; t <= 8; ++t) {
        EXPECT_EQ(symmetric_group(t).derangements().size(), oracle_ref::subfactorial(t)) << t;
    }
    EXPECT_EQ(oracle_ref::subfactorial(5), 44u);
    EXPECT_EQ(oracle_ref::subfactorial(6), 265u);
}

TEST(SymmetricGroup, PartitionCounts) {
    const std::size_t expected[] = {1, 2, 3, 5, 7, 11, 15, 22};
    for (int t = 1; t <= 8; ++t) {
        EXPECT_EQ(partitions(t).size(), expected[t - 1]);
        EXPECT_EQ(partitions(t).front(), Partition({t}));
    }
}

TEST(SymmetricGroup, ClassSizesSumToOrderAndMatchEnumeration) {
    for (int t = 1; t <= 7; ++t) {
        const auto &g = symmetric_group(t);
        std::vector<std::uint64_t> counted(g.class_count(), 0);
        for (std::size_t i = 0; i < g.order(); ++i) {
            ++counted[g.class_of(i)];
            EXPECT_EQ(g.element(i).cycle_type(), g.classes()[g.class_of(i)].cycle_type.parts());
        }
        std::uint64_t total = 0;
        for (std::size_t c = 0; c < g.class_count(); ++c) {
            EXPECT_EQ(counted[c], g.classes()[c].size);
            EXPECT_EQ(g.classes()[c].size * g.classes()[c].centralizer, factorial(t));
            total += g.classes()[c].size;
        }
        EXPECT_EQ(total, factorial(t));
    }
}

TEST(SymmetricGroup, MultiplicationTableAgreesWithCompose) {
    for (int t : {3, 5, 7}) {
        const auto &g = symmetric_group(t);
        std::mt19937 rng(t);
        std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
        for (int n = 0; n < 2000; ++n) {
            std::size_t i = pick(rng), j = pick(rng);
            EXPECT_EQ(g.element(g.product(i, j)), g.element(i) * g.element(j));
            EXPECT_EQ(g.element(g.inverse(i)), g.element(i).inverse());
            EXPECT_EQ(g.length(g.relative(i, j)), cayley_distance(g.element(i), g.element(j)));
        }
    }
}

TEST(JucysMurphy, DecompositionReproducesEveryElement) {
    for (int t = 1; t <= 6; ++t) {
        const auto &g = symmetric_group(t);
        for (std::size_t i = 0; i < g.order(); ++i) {
            auto f = jucys_murphy_decomposition(g.element(i));
            EXPECT_EQ(static_cast<int>(f.size()), g.length(i));
            for (std::size_t k = 0; k < f.size(); ++k) {
                EXPECT_LT(f[k].first, f[k].second);
                if (k > 0) {
                    EXPECT_LT(f[k - 1].second, f[k].second);
                }
            }
            EXPECT_EQ(product_of_transpositions(t, f), g.element(i));
        }
    }
}

TEST(CosetSplit, LengthIsAdditive) {
    const int t = 5;
    const auto &g = symmetric_group(t);
    for (int l = 1; l <= t; ++l) {
        for (std::size_t i = 0; i < g.order(); ++i) {
            auto split = minimal_coset_representative(g.element(i), l);
            EXPECT_EQ(split.lambda * split.rho, g.element(i));
            for (int k = l; k < t; ++k) {
                EXPECT_EQ(split.lambda[k], k);
            }
            for (std::size_t j = 0; j < g.order(); ++j) {
                const auto &lp = g.element(j);
                bool in_sub = true;
                for (int k = l; k < t; ++k) {
                    in_sub = in_sub && lp[k] == k;
                }
                if (in_sub) {
                    EXPECT_EQ((lp * split.rho).length(), lp.length() + split.rho.length());
                }
            }
        }
    }
}

TEST(CompleteDerangement, DefinitionByCommonFixedPoint) {
    Permutation id = Permutation::identity(3);
    Permutation s({1, 0, 2});
    Permutation c({1, 2, 0});
    EXPECT_FALSE(is_complete_derangement({id, id}));
    EXPECT_FALSE(is_complete_derangement({id, s}));
    EXPECT_TRUE(is_complete_derangement({id, c}));
    EXPECT_TRUE(is_complete_derangement({id, s, Permutation({0, 2, 1})}));
}

TEST(Partition, HookDimensionsAndConjugate) {
    for (int t = 1; t <= 8; ++t) {
        std::uint64_t sum = 0;
        for (const auto &p : partitions(t)) {
            sum += p.hook_dimension() * p.hook_dimension();
            EXPECT_EQ(p.conjugate().conjugate(), p);
            EXPECT_EQ(p.conjugate().hook_dimension(), p.hook_dimension());
            EXPECT_EQ(parse_partition(p.label()), p);
        }
        EXPECT_EQ(sum, factorial(t));
    }
}
