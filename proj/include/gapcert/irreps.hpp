#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "gapcert/permutation.hpp"
#include "gapcert/polynomial.hpp"
#include "gapcert/symmetric_group.hpp"

namespace gapcert {

// A standard Young tableau, stored as the cell of each entry 0..t-1.
struct StandardTableau {
    std::vector<int> row;
    std::vector<int> column;
    int content(int entry) const { return column[entry] - row[entry]; }
};

// All standard tableaux of the given shape, in a fixed deterministic order.
std::vector<StandardTableau> standard_tableaux(const Partition &shape);

// Murnaghan-Nakayama: character of the irrep nu on the class with the given cycle type.
Integer character(const Partition &nu, const Partition &cycle_type);

// Young's orthogonal form of the irrep labelled by nu.
class IrrepTable {
  public:
    explicit IrrepTable(const Partition &nu);

    const Partition &label() const { return label_; }
    int degree() const { return t_; }
    int dimension() const { return dim_; }

    // Matrix of the adjacent transposition (k, k+1).
    const Eigen::MatrixXd &generator(int k) const { return generators_[k]; }
    Eigen::MatrixXd matrix(const Permutation &sigma) const;
    // Group-indexed lookup; cached for t <= 7, computed on demand otherwise.
    Eigen::MatrixXd matrix(std::size_t element_index) const;
    bool has_cache() const { return !cache_.empty(); }
    const Eigen::MatrixXd &cached(std::size_t element_index) const { return cache_[element_index]; }

    // Characters by class index of conjugacy_classes(t).
    const std::vector<Integer> &characters() const { return characters_; }
    // Max entry of V V^T - I over all stored matrices (generators only when uncached).
    double orthogonality_residual() const { return residual_; }

    // Exact values for one-dimensional irreps: +1 for (t), sign for (1^t).
    bool is_one_dimensional() const { return dim_ == 1; }
    int sign_value(const Permutation &sigma) const;

  private:
    Partition label_;
    int t_;
    int dim_;
    std::vector<Eigen::MatrixXd> generators_;
    std::vector<Eigen::MatrixXd> cache_;
    std::vector<Integer> characters_;
    double residual_ = 0.0;
};

IrrepTable build_irrep(const Partition &nu);
// Shared immutable table per shape.
const IrrepTable &irrep(const Partition &nu);

// Class function (d_nu / t!) chi_nu and its group-matrix form.
struct CanonicalIdempotent {
    Partition label;
    std::vector<Rational> class_values;
    Eigen::MatrixXd matrix(const SymmetricGroup &group) const;
};

CanonicalIdempotent canonical_idempotent(const Partition &nu);

struct SchurReport {
    bool passed = false;
    double max_deviation = 0.0;
};

// Checks sum_rho V_nu(rho)_{ij} V_mu(rho)_{kn} = (t!/d_nu) delta_{mu nu} delta_{ik} delta_{jn}.
SchurReport schur_orthogonality_check(const Partition &mu, const Partition &nu, double tolerance = 1e-12);

}  // namespace gapcert
