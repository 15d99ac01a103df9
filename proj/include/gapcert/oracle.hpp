#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "gapcert/linalg.hpp"
#include "gapcert/permutation.hpp"
#include "gapcert/polynomial.hpp"

namespace gapcert {

inline constexpr std::size_t kMaxOracleDimension = 20736;

// Coefficient vectors over tuples (sigma_0, ..., sigma_{N-1}) of S_t elements, flattened
// as sum_k index(sigma_k) (t!)^k.
class TupleSpace {
  public:
    TupleSpace(int N, int t);

    int sites() const { return N_; }
    int degree() const { return t_; }
    std::size_t order() const { return order_; }
    std::size_t dimension() const { return dim_; }
    std::size_t digit(std::size_t index, int site) const { return (index / stride_[site]) % order_; }
    std::size_t stride(int site) const { return stride_[site]; }
    PermutationTuple tuple(std::size_t index) const;
    bool is_complete_derangement(std::size_t index) const;

  private:
    int N_;
    int t_;
    std::size_t order_;
    std::size_t dim_;
    std::vector<std::size_t> stride_;
};

struct CoefficientOperator {
    int N = 0;
    int t = 0;
    int q = 0;
    Eigen::MatrixXd matrix;  // column = input tuple, row = output tuple
};

// Haar projector on the contiguous block of sites [first, last], local dimension q^{last-first+1}.
CoefficientOperator block_projector(int N, int t, int q, int first, int last);
RationalMatrix block_projector_exact(int N, int t, int q, int first, int last);

// Two-site Haar gate on 1-based sites (i, i+1), 1 <= i < N.
CoefficientOperator gate_operator(int N, int t, int q, int i);

struct TransferMatrices {
    CoefficientOperator staircase;  // G_{N-1} ... G_1
    CoefficientOperator brickwork;  // L_O L_E
};

TransferMatrices transfer_matrices(int N, int t, int q);

// Nonzero eigenvalues, sorted by decreasing magnitude.
std::vector<std::complex<double>> nonzero_spectrum(const Eigen::MatrixXd &m);

// Largest eigenvalue magnitude strictly below 1 - 1e-9; 0 when there is none.
double subleading_magnitude(const std::vector<std::complex<double>> &spectrum);

struct KmDirect {
    int m = 0;
    int t = 0;
    int q = 0;
    double value = 0.0;
    std::vector<std::complex<double>> spectrum;
};

// Pi G Pi on m + 2 sites: Pi projects sites 0..m, G acts on sites (m, m+1).
KmDirect km_direct(int m, int t, int q);
CoefficientOperator km_operator(int m, int t, int q);
RationalMatrix km_operator_exact(int m, int t, int q);

struct KmExact {
    bool found = false;
    Rational value;
    double approximate = 0.0;
};

// Exact subleading eigenvalue: the first continued-fraction convergent r of the double
// value with det(K - r I) = 0 over the rationals.
KmExact km_direct_exact(int m, int t, int q, const Integer &max_den = Integer("1000000000000"));

struct DerangedSplit {
    bool passed = false;          // set identity with the moment t-1 spectrum
    bool block_multiset = false;  // nonzero spectrum = deranged block + non-deranged block
    std::vector<std::complex<double>> full;
    std::vector<std::complex<double>> deranged;
    std::vector<std::complex<double>> lower_moment;
};

DerangedSplit deranged_split_check(int N, int t, int q, double tol = 1e-8);

// Permutation matrix of the global right action sigma_k -> sigma_k rho on all sites.
Eigen::MatrixXd right_action(int N, int t, const Permutation &rho);

// Max |G_t(embedded tuple) - embedded G_k(tuple)| over all tuples of S_k^N, k < t.
double embedding_residual(int N, int t, int k, int q, int site);

// Magnitude of the largest non-unit staircase eigenvalue.
double staircase_sev(int N, int t, int q);

}  // namespace gapcert
