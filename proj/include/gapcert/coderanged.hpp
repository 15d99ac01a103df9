#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gapcert/permutation.hpp"
#include "gapcert/symmetric_group.hpp"

namespace gapcert {

// Space of pair-indexed vectors on which the coderanged operator acts. Vectors are
// dense matrices; implementations differ by how the pair index is laid out.
class IntersectionSpace {
  public:
    virtual ~IntersectionSpace() = default;

    virtual Eigen::Index rows() const = 0;
    virtual Eigen::Index cols() const = 0;
    virtual void apply_O(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const = 0;
    // X(q^{m+1}) ⊗ X(q)
    virtual void apply_X(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const = 0;
    // W(q^{m+1}) ⊗ W(q), the inherited metric
    virtual void apply_metric(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const = 0;
    // Zero the coordinates whose relative permutation is not a derangement.
    virtual void mask(Eigen::MatrixXd &v) const = 0;
};

struct CoderangedFactors {
    int t = 0;
    int q = 0;
    int m = 0;
    Eigen::MatrixXd w_big;     // W(q^{m+1})
    Eigen::MatrixXd x_big;     // X(q^{m+1})
    Eigen::MatrixXd w_small;   // W(q)
    Eigen::MatrixXd x_small;   // X(q)
    Eigen::MatrixXd w_gate;    // W(q^2)
    Eigen::MatrixXd c_big;     // C(q^m)
    Eigen::MatrixXd c_small;   // C(q)
    Eigen::VectorXd single;    // q^{-|xi|} by group element
    bool x_big_is_identity = false;
    bool x_small_is_identity = false;
};

CoderangedFactors coderanged_factors(int m, int q, int t);

// Full pair space indexed by (sigma, tau), dimension t!^2.
class PairIntersectionSpace : public IntersectionSpace {
  public:
    PairIntersectionSpace(int m, int q, int t);

    Eigen::Index rows() const override { return n_; }
    Eigen::Index cols() const override { return n_; }
    void apply_O(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const override;
    void apply_X(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const override;
    void apply_metric(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const override;
    void mask(Eigen::MatrixXd &v) const override;

    const CoderangedFactors &factors() const { return f_; }

  private:
    CoderangedFactors f_;
    Eigen::Index n_;
    Eigen::MatrixXd single_pair_;  // q^{-|sigma^{-1} tau|}
    Eigen::MatrixXd deranged_;     // 1 on pairs with sigma^{-1} tau a derangement
};

// One isotypic block of the global left action for the irrep nu, indexed by
// (xi = sigma^{-1} tau, irrep column); dimension t! d_nu.
class IrrepIntersectionSpace : public IntersectionSpace {
  public:
    IrrepIntersectionSpace(std::shared_ptr<const CoderangedFactors> factors, const Partition &nu);

    Eigen::Index rows() const override { return n_; }
    Eigen::Index cols() const override { return d_; }
    void apply_O(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const override;
    void apply_X(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const override;
    void apply_metric(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const override;
    void mask(Eigen::MatrixXd &v) const override;

  private:
    // u <- R^T A R u, where R multiplies row xi on the right by V_nu(xi)
    void left_action(const Eigen::MatrixXd &a, Eigen::MatrixXd &u) const;

    std::shared_ptr<const CoderangedFactors> f_;
    Partition nu_;
    Eigen::Index n_;
    int d_;
    std::vector<Eigen::MatrixXd> reps_;
    std::vector<bool> deranged_;
};

struct LanczosOptions {
    double tol = 1e-10;
    int max_dim = 300;
    double projection_tol = 1e-10;
    int max_alternations = 200;
    int start_iterations = 5000;
    std::uint64_t seed = 20240601;
};

struct LanczosResult {
    bool trivial = false;  // intersection space is {0}: no new eigenvalues
    double eigenvalue = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double start_overlap = 0.0;  // leading eigenvalue of X on the deranged support
    double projection_residual = 0.0;
};

// Project v onto the intersection of the deranged support and the image of X by
// alternating the two projections, finishing on the support mask. Returns the final joint residual.
double project_to_intersection(const IntersectionSpace &space, Eigen::MatrixXd &v, double tol, int max_alternations);

LanczosResult intersection_lanczos(const IntersectionSpace &space, const LanczosOptions &options = {});

enum class CoderangedMethod { pair_space, irrep_blocks };

struct CoderangedValue {
    int q = 0;
    int t = 0;
    int m = 0;
    double eigenvalue = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool trivial = false;
    bool experimental = false;
};

// Leading eigenvalue of the coderanged operator over the intersection space.
CoderangedValue coderanged_eigenvalue(int m, int q, int t, CoderangedMethod method = CoderangedMethod::irrep_blocks,
                                      const LanczosOptions &options = {});

// Per-m leading intersection eigenvalues for m in [m_first, m_last].
std::vector<CoderangedValue> km_table_tgtq(int q, int t, int m_first, int m_last,
                                           const LanczosOptions &options = {});

}  // namespace gapcert
