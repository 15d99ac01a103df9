#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "gapcert/polynomial.hpp"

namespace gapcert {

// Dense row-major matrix of exact rationals.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    Eigen::MatrixXd to_double() const;
    friend RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b);
    friend RationalMatrix operator-(const RationalMatrix &a, const RationalMatrix &b);
    friend bool operator==(const RationalMatrix &a, const RationalMatrix &b) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Rational determinant(RationalMatrix m);
// det(M - r I) == 0 over the rationals.
bool is_exact_eigenvalue(const RationalMatrix &m, const Rational &r);

using Matvec = std::function<void(const Eigen::VectorXd &, Eigen::VectorXd &)>;

struct IterationResult {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    Eigen::VectorXd vector;
};

// Power iteration for the dominant eigenvalue of a symmetric positive semidefinite map,
// stopping when the Rayleigh quotient changes by less than tol (relative).
IterationResult power_iteration(const Matvec &apply, Eigen::VectorXd start, double tol, int max_iterations);

// Largest singular value of a map given its action and its transpose action.
IterationResult largest_singular_value(const Matvec &apply, const Matvec &apply_transpose, Eigen::VectorXd start,
                                       double tol, int max_iterations);

// Nonzero eigenvalues of a dense matrix; |z| <= zero_tol counts as zero.
std::vector<std::complex<double>> nonzero_eigenvalues(const Eigen::MatrixXd &m, double zero_tol = 1e-9);

// Greedy multiset matching of two eigenvalue lists.
bool multiset_equal(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b, double tol);
// Same values up to multiplicity.
bool set_equal(const std::vector<std::complex<double>> &a, const std::vector<std::complex<double>> &b, double tol);

// Sort by decreasing magnitude, ties by real part then imaginary part.
void sort_by_magnitude(std::vector<std::complex<double>> &values);

}  // namespace gapcert
