#pragma once

// Reference computations written without the library's group tables.

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

namespace oracle_ref {

using Perm = std::vector<int>;

inline std::vector<Perm> all_perms(int t) {
    Perm p(t);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// (a b)(i) = a(b(i))
inline Perm mul(const Perm &a, const Perm &b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] = a[b[i]];
    }
    return c;
}

inline Perm inv(const Perm &a) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[a[i]] = static_cast<int>(i);
    }
    return c;
}

// Breadth-first distance from the identity in the Cayley graph generated by all transpositions.
inline std::map<Perm, int> transposition_distances(int t) {
    Perm id(t);
    std::iota(id.begin(), id.end(), 0);
    std::map<Perm, int> dist{{id, 0}};
    std::queue<Perm> frontier;
    frontier.push(id);
    while (!frontier.empty()) {
        Perm p = frontier.front();
        frontier.pop();
        for (int a = 0; a < t; ++a) {
            for (int b = a + 1; b < t; ++b) {
                Perm n = p;
                std::swap(n[a], n[b]);
                if (!dist.count(n)) {
                    dist[n] = dist[p] + 1;
                    frontier.push(n);
                }
            }
        }
    }
    return dist;
}

inline bool has_fixed_point(const Perm &p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == static_cast<int>(i)) {
            return true;
        }
    }
    return false;
}

// Coefficients of sum over derangements sigma and all tau of x^{d(sigma^{-1} tau) + d(tau)}.
inline std::vector<long> derangement_polynomial(int t) {
    auto perms = all_perms(t);
    auto dist = transposition_distances(t);
    std::vector<long> c(2 * t + 1, 0);
    for (const auto &s : perms) {
        if (has_fixed_point(s)) {
            continue;
        }
        Perm si = inv(s);
        for (const auto &tau : perms) {
            ++c[dist[mul(si, tau)] + dist[tau]];
        }
    }
    while (!c.empty() && c.back() == 0) {
        c.pop_back();
    }
    return c;
}

// Dense Gram matrix d^{-|sigma^{-1} tau|} over all_perms(t) ordering.
inline Eigen::MatrixXd gram(int t, double d) {
    auto perms = all_perms(t);
    auto dist = transposition_distances(t);
    Eigen::MatrixXd g(perms.size(), perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i) {
        for (std::size_t j = 0; j < perms.size(); ++j) {
            g(i, j) = std::pow(d, -dist[mul(inv(perms[i]), perms[j])]);
        }
    }
    return g;
}

// Moore-Penrose pseudo-inverse of a symmetric matrix through its eigendecomposition.
inline Eigen::MatrixXd symmetric_pinv(const Eigen::MatrixXd &m, double tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd v = es.eigenvalues();
    double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = std::abs(v[i]) > tol * scale ? 1.0 / v[i] : 0.0;
    }
    return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().transpose();
}

inline mpq_class t2_closed_form(long m, long q) {
    mpz_class q2 = q * q;
    mpz_class q2m, q2m2;
    mpz_pow_ui(q2m.get_mpz_t(), mpz_class(q).get_mpz_t(), 2 * m);
    mpz_pow_ui(q2m2.get_mpz_t(), mpz_class(q).get_mpz_t(), 2 * m + 2);
    mpq_class r(q2 * (q2m - 1), (q2 + 1) * (q2m2 - 1));
    r.canonicalize();
    return r;
}

inline std::uint64_t subfactorial(int n) {
    std::uint64_t a = 1, b = 0;  // !0, !1
    if (n == 0) {
        return 1;
    }
    for (int k = 2; k <= n; ++k) {
        std::uint64_t c = (k - 1) * (a + b);
        a = b;
        b = c;
    }
    return b;
}

}  // namespace oracle_ref
