#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "gapcert/irreps.hpp"
#include "gapcert/linalg.hpp"
#include "gapcert/permutation.hpp"
#include "gapcert/polynomial.hpp"
#include "gapcert/symmetric_group.hpp"

namespace gapcert {

// Group-indexed factors of the per-irrep 3-site operator with Q1 = q^m, Q2 = Q3 = q.
struct FactorSet {
    int t = 0;
    Partition nu;
    int m = 0;
    int q = 0;
    Rational Q1, Q2, Q3;
    Eigen::MatrixXd left_half;   // W(Q1 Q2) D(Q2) C(Q1)
    Eigen::MatrixXd right_half;  // W(Q2 Q3) D(Q2) C(Q3)
    bool pseudo_inverse = false;  // Q1 Q2 < t or Q2 Q3 < t
    std::string warning;
};

FactorSet factor_set(const Partition &nu, int m, int q);

// M = D_nu^{-1} [left_half] D_nu [right_half] on vectors stored as t! x d_nu matrices
// (row = group element, column = irrep index); D_nu multiplies row sigma by V_nu(sigma).
class MBlock {
  public:
    MBlock(const Partition &nu, int m, int q);

    const FactorSet &factors() const { return factors_; }
    int degree() const { return factors_.t; }
    int irrep_dimension() const { return dim_; }
    std::size_t dimension() const { return order_ * static_cast<std::size_t>(dim_); }
    const std::vector<bool> &deranged_rows() const { return deranged_; }

    void apply(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const;
    void apply_transpose(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const;
    // P_D M P_D and its transpose, P_D zeroing non-derangement rows.
    void apply_deranged(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const;
    void apply_deranged_transpose(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const;

    // Dense matrix over the flattened index sigma * d_nu + i; only for dimension() <= 4096.
    Eigen::MatrixXd materialize() const;
    Eigen::MatrixXd materialize_deranged_block() const;

  private:
    void multiply_rep(Eigen::MatrixXd &x, bool inverse) const;
    void mask(Eigen::MatrixXd &x) const;

    FactorSet factors_;
    std::size_t order_;
    int dim_;
    std::vector<Eigen::MatrixXd> reps_;
    std::vector<bool> deranged_;
};

inline constexpr std::size_t kMaxMaterializedDimension = 4096;

struct NormResult {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Largest singular value of P_D M P_D by power iteration on its Gram operator.
NormResult deranged_norm(const Partition &nu, int m, int q, int t, double tol = 1e-12, int max_iterations = 100000);
// Eigenvalues of the deranged block (dense; dimension capped).
std::vector<std::complex<double>> deranged_eigenvalues(const Partition &nu, int m, int q);

// Exact deranged block over the rationals, available for one-dimensional irreps.
RationalMatrix deranged_block_exact(const Partition &nu, int m, int q);
// Exact basis norm of a 1x1 deranged block.
Rational deranged_norm_exact(const Partition &nu, int m, int q);

struct IrrepNorm {
    Partition nu;
    double norm = 0.0;
    double residual = 0.0;
    bool converged = false;
};

struct SubleadingBound {
    int m = 0;
    int q = 0;
    int t = 0;
    double bound = 0.0;
    std::vector<IrrepNorm> per_irrep;
};

// max over 2 <= k <= t and nu |- k of deranged_norm(nu, m, q, k); requires t <= q.
SubleadingBound km_subleading_bound(int m, int q, int t);

// t = 2 closed form q^2 (q^{2m} - 1) / ((q^2 + 1)(q^{2m+2} - 1)).
Rational t2_eigenvalue(int m, int q);

// H_{sigma tau} = sum_rho Q1^{-|rho sigma^{-1}|} Q2^{-|rho|} Wg(rho^{-1} tau, Q1 Q2).
struct HalfOperator {
    int t = 0;
    Rational Q1, Q2;
    Eigen::MatrixXd entries;
    double row_restricted_norm() const;  // rows sigma deranged
    double column_restricted_norm() const;
};

HalfOperator half_operator(int t, const Rational &Q1, const Rational &Q2);
RationalMatrix half_operator_exact(int t, const Rational &Q1, const Rational &Q2);

struct HbarMajorant {
    int t = 0;
    int exponent = 0;  // ceil(t/2)
    Eigen::MatrixXd entries;
    double denominator_value = 0.0;  // f_t(t^-2)
    double row_norm = 0.0;
    double column_norm = 0.0;
    int min_degree_deranged_rows = 0;
    int min_degree_deranged_columns = 0;

    // Implied coefficient of the K bound: norm^2 t^2.
    double k_coefficient(double norm) const { return norm * norm * t * t; }
};

HbarMajorant hbar_majorant(int t);
// max of |H(Q1,Q2)| - (t/q)^e Hbar over entries in a deranged row or column; nonpositive when the
// elementwise bound holds there.
double hbar_domination_margin(const HbarMajorant &hbar, int q, const Rational &Q1, const Rational &Q2);

}  // namespace gapcert
