#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gapcert/linalg.hpp"
#include "gapcert/permutation.hpp"
#include "gapcert/polynomial.hpp"
#include "gapcert/symmetric_group.hpp"

namespace gapcert {

// Values of a class function of S_t, indexed like conjugacy_classes(t).
using ClassFunction = std::vector<Rational>;

std::vector<double> to_double(const ClassFunction &f);

// Group matrix M[sigma, tau] = f(sigma^{-1} tau) of a class function f.
struct GroupMatrix {
    int t = 0;
    ClassFunction values;

    Rational entry(const Permutation &sigma, const Permutation &tau) const;
    Eigen::MatrixXd dense(const SymmetricGroup &group) const;
    RationalMatrix exact(const SymmetricGroup &group) const;
};

Eigen::MatrixXd dense_group_matrix(const SymmetricGroup &group, const std::vector<double> &class_values);

// (a * b)(g) = sum_h a(h) b(h^{-1} g); the group matrix of a*b is the product of the two group matrices.
ClassFunction convolve(int t, const ClassFunction &a, const ClassFunction &b);
std::vector<double> convolve(int t, const std::vector<double> &a, const std::vector<double> &b);

// prod over cells of (1 + content/d); zero iff lambda has more than d rows.
Rational class_eigenvalue(const Partition &lambda, const Rational &d);

GroupMatrix gram_matrix(int t, const Rational &d);

struct WeingartenMatrix {
    GroupMatrix matrix;
    Rational d;
    bool invertible = false;  // d >= t
};

enum class Backend { exact, floating };

// Pseudo-normalized so that W(d) C(d) = X(d, t).
WeingartenMatrix weingarten_matrix(int t, const Rational &d);
// Double-precision class values computed without rationals, plus ||W*C - X||_max.
struct FloatWeingarten {
    std::vector<double> values;
    double residual = 0.0;
};
FloatWeingarten weingarten_float(int t, double d);

// Sum of canonical idempotents over partitions with at most d rows.
GroupMatrix x_projector(int t, const Integer &d);

struct WgRationalForm {
    int t = 0;
    IntPolynomial denominator;
    std::vector<Partition> classes;
    std::vector<IntPolynomial> numerators;

    Rational evaluate(std::size_t class_index, const Rational &z) const;
};

// Wg(c, d) = g_c(1/d) / f_t(1/d), f_t the lcm of prod_cells (1 + content z).
WgRationalForm wg_rational_form(int t);

struct WeingartenNormCertificate {
    Rational largest_eigenvalue;  // [min_lambda c_lambda(d)]^{-1}
    double value = 0.0;
    bool within_e = false;
    bool hypothesis_holds = false;  // t <= sqrt(d)
};

WeingartenNormCertificate weingarten_norm_certificate(int t, const Integer &d);

}  // namespace gapcert
