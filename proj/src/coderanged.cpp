#include "gapcert/coderanged.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gapcert/format.hpp"
#include "gapcert/irreps.hpp"
#include "gapcert/weingarten.hpp"

namespace gapcert {

namespace {

double frob_dot(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) { return (a.array() * b.array()).sum(); }

}  // namespace

CoderangedFactors coderanged_factors(int m, int q, int t) {
    if (t < 1 || t > 7) {
        throw std::invalid_argument("coderanged: supported for 1 <= t <= 7");
    }
    if (q < 2 || m < 1) {
        throw std::invalid_argument("coderanged: requires q >= 2 and m >= 1");
    }
    const auto &group = symmetric_group(t);
    CoderangedFactors f;
    f.t = t;
    f.q = q;
    f.m = m;
    Rational Q(q);
    Rational big = rational_pow(Q, m + 1);
    f.w_big = weingarten_matrix(t, big).matrix.dense(group);
    f.w_small = weingarten_matrix(t, Q).matrix.dense(group);
    f.w_gate = weingarten_matrix(t, Q * Q).matrix.dense(group);
    f.c_big = gram_matrix(t, rational_pow(Q, m)).dense(group);
    f.c_small = gram_matrix(t, Q).dense(group);
    f.x_big_is_identity = big >= t;
    f.x_small_is_identity = q >= t;
    f.x_big = x_projector(t, big.get_num()).dense(group);
    f.x_small = x_projector(t, Integer(q)).dense(group);
    f.single.resize(group.order());
    for (std::size_t i = 0; i < group.order(); ++i) {
        f.single[i] = std::pow(static_cast<double>(q), -group.length(i));
    }
    return f;
}

PairIntersectionSpace::PairIntersectionSpace(int m, int q, int t) : f_(coderanged_factors(m, q, t)) {
    if (t > 5) {
        throw std::invalid_argument("PairIntersectionSpace: full pair space limited to t <= 5");
    }
    const auto &group = symmetric_group(t);
    n_ = static_cast<Eigen::Index>(group.order());
    single_pair_ = f_.c_small;
    deranged_.resize(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
        for (Eigen::Index j = 0; j < n_; ++j) {
            deranged_(i, j) = group.is_derangement(group.relative(i, j)) ? 1.0 : 0.0;
        }
    }
}

void PairIntersectionSpace::apply_O(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd v = f_.w_big * in;
    if (!f_.x_small_is_identity) {
        v = v * f_.x_small;
    }
    v.array() *= single_pair_.array();
    Eigen::MatrixXd c = v * f_.w_gate;
    Eigen::MatrixXd d = f_.c_big * c;
    d.array() *= single_pair_.array();
    if (!f_.x_big_is_identity) {
        d = f_.x_big * d;
    }
    out.noalias() = d * f_.c_small;
}

void PairIntersectionSpace::apply_X(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd v = f_.x_big_is_identity ? in : Eigen::MatrixXd(f_.x_big * in);
    if (f_.x_small_is_identity) {
        out = v;
    } else {
        out.noalias() = v * f_.x_small;
    }
}

void PairIntersectionSpace::apply_metric(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd v = f_.w_big * in;
    out.noalias() = v * f_.w_small;
}

void PairIntersectionSpace::mask(Eigen::MatrixXd &v) const { v.array() *= deranged_.array(); }

IrrepIntersectionSpace::IrrepIntersectionSpace(std::shared_ptr<const CoderangedFactors> factors, const Partition &nu)
    : f_(std::move(factors)), nu_(nu) {
    if (nu.size() != f_->t) {
        throw std::invalid_argument("IrrepIntersectionSpace: partition does not match t");
    }
    const auto &group = symmetric_group(f_->t);
    const auto &rep = irrep(nu);
    n_ = static_cast<Eigen::Index>(group.order());
    d_ = rep.dimension();
    reps_.reserve(n_);
    deranged_.resize(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
        reps_.push_back(rep.matrix(static_cast<std::size_t>(i)));
        deranged_[i] = group.is_derangement(i);
    }
}

void IrrepIntersectionSpace::left_action(const Eigen::MatrixXd &a, Eigen::MatrixXd &u) const {
    Eigen::MatrixXd w(n_, d_);
    for (Eigen::Index i = 0; i < n_; ++i) {
        w.row(i).noalias() = u.row(i) * reps_[i];
    }
    Eigen::MatrixXd aw = a * w;
    for (Eigen::Index i = 0; i < n_; ++i) {
        u.row(i).noalias() = aw.row(i) * reps_[i].transpose();
    }
}

void IrrepIntersectionSpace::apply_O(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd u = in;
    left_action(f_->w_big, u);
    if (!f_->x_small_is_identity) {
        u = f_->x_small * u;
    }
    u.array().colwise() *= f_->single.array();
    u = f_->w_gate * u;
    left_action(f_->c_big, u);
    u.array().colwise() *= f_->single.array();
    if (!f_->x_big_is_identity) {
        left_action(f_->x_big, u);
    }
    out.noalias() = f_->c_small * u;
}

void IrrepIntersectionSpace::apply_X(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    out = in;
    if (!f_->x_big_is_identity) {
        left_action(f_->x_big, out);
    }
    if (!f_->x_small_is_identity) {
        out = f_->x_small * out;
    }
}

void IrrepIntersectionSpace::apply_metric(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd u = in;
    left_action(f_->w_big, u);
    out.noalias() = f_->w_small * u;
}

void IrrepIntersectionSpace::mask(Eigen::MatrixXd &v) const {
    for (Eigen::Index i = 0; i < n_; ++i) {
        if (!deranged_[i]) {
            v.row(i).setZero();
        }
    }
}

double project_to_intersection(const IntersectionSpace &space, Eigen::MatrixXd &v, double tol, int max_alternations) {
    Eigen::MatrixXd x(v.rows(), v.cols());
    double residual = 0.0;
    for (int k = 0; k < max_alternations; ++k) {
        space.mask(v);
        space.apply_X(v, x);
        double scale = std::max(x.norm(), 1e-300);
        double change = (x - v).norm() / scale;
        v.swap(x);
        x = v;
        space.mask(x);
        residual = std::max(change, (x - v).norm() / scale);
        if (residual < tol) {
            break;
        }
    }
    space.mask(v);
    space.apply_X(v, x);
    return std::max(residual, (x - v).norm() / std::max(v.norm(), 1e-300));
}

LanczosResult intersection_lanczos(const IntersectionSpace &space, const LanczosOptions &options) {
    LanczosResult result;
    Eigen::Index r = space.rows();
    Eigen::Index c = space.cols();
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd v(r, c);
    for (Eigen::Index j = 0; j < c; ++j) {
        for (Eigen::Index i = 0; i < r; ++i) {
            v(i, j) = normal(rng);
        }
    }

    // Leading eigenvector of mask X mask: eigenvalue 1 iff the intersection is nontrivial.
    Eigen::MatrixXd x(r, c);
    space.mask(v);
    v /= v.norm();
    double overlap = 0.0;
    double previous = -1.0;
    bool found = false;
    for (int it = 0; it < options.start_iterations; ++it) {
        space.apply_X(v, x);
        space.mask(x);
        overlap = x.norm();
        if (overlap < 1e-300) {
            break;
        }
        x /= overlap;
        Eigen::MatrixXd check(r, c);
        space.apply_X(x, check);
        double joint = (check - x).norm();
        v.swap(x);
        if (joint < options.projection_tol) {
            found = true;
            break;
        }
        if (std::abs(overlap - previous) < 1e-15 && overlap < 1.0 - 1e-8) {
            break;
        }
        previous = overlap;
    }
    result.start_overlap = overlap;
    if (!found) {
        if (overlap < 1.0 - 1e-8) {
            result.trivial = true;
            return result;
        }
        throw std::runtime_error("intersection_lanczos: start vector did not converge, overlap " +
                                 format_double(overlap));
    }

    std::vector<Eigen::MatrixXd> basis;
    std::vector<Eigen::MatrixXd> metric_basis;
    std::vector<Eigen::MatrixXd> image;
    Eigen::MatrixXd g(r, c);
    auto orthogonalize = [&](Eigen::MatrixXd &w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < basis.size(); ++i) {
                w -= frob_dot(metric_basis[i], w) * basis[i];
            }
        }
    };
    auto admit = [&](Eigen::MatrixXd w) {
        project_to_intersection(space, w, options.projection_tol, options.max_alternations);
        orthogonalize(w);
        space.apply_metric(w, g);
        double nw = std::sqrt(std::max(frob_dot(w, g), 0.0));
        basis.push_back(w / nw);
        metric_basis.push_back(g / nw);
    };
    admit(v);

    int max_dim = options.max_dim;
    Eigen::MatrixXd rayleigh = Eigen::MatrixXd::Zero(max_dim, max_dim);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(max_dim, max_dim);
    double theta = 0.0;
    Eigen::MatrixXd y(r, c);
    Eigen::MatrixXd res(r, c);
    Eigen::MatrixXd gres(r, c);
    bool converged = false;
    for (int j = 0; j < max_dim; ++j) {
        Eigen::MatrixXd w(r, c);
        space.apply_O(basis[j], w);
        result.projection_residual =
            std::max(result.projection_residual,
                     project_to_intersection(space, w, options.projection_tol, options.max_alternations));
        image.push_back(w);
        for (int i = 0; i <= j; ++i) {
            double h = 0.5 * (frob_dot(metric_basis[i], image[j]) + frob_dot(metric_basis[j], image[i]));
            rayleigh(i, j) = rayleigh(j, i) = h;
            double s = 0.5 * (frob_dot(metric_basis[i], basis[j]) + frob_dot(metric_basis[j], basis[i]));
            gram(i, j) = gram(j, i) = s;
        }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(rayleigh.topLeftCorner(j + 1, j + 1),
                                                                         gram.topLeftCorner(j + 1, j + 1));
        theta = solver.eigenvalues()[j];
        Eigen::VectorXd coefficients = solver.eigenvectors().col(j);
        y.setZero();
        res.setZero();
        for (int i = 0; i <= j; ++i) {
            y += coefficients[i] * basis[i];
            res += coefficients[i] * image[i];
        }
        res -= theta * y;
        space.apply_metric(res, gres);
        result.residual = std::sqrt(std::max(frob_dot(res, gres), 0.0));
        result.iterations = j + 1;
        if (result.residual <= options.tol * std::max(1.0, std::abs(theta))) {
            converged = true;
            break;
        }

        Eigen::MatrixXd next = w;
        orthogonalize(next);
        space.apply_metric(next, g);
        double beta = std::sqrt(std::max(frob_dot(next, g), 0.0));
        space.apply_metric(w, g);
        double scale = std::sqrt(std::max(frob_dot(w, g), 0.0));
        if (beta <= 1e-8 * scale) {
            // Krylov space is numerically invariant: continue from a fresh direction.
            for (Eigen::Index jj = 0; jj < c; ++jj) {
                for (Eigen::Index ii = 0; ii < r; ++ii) {
                    next(ii, jj) = normal(rng);
                }
            }
        }
        admit(next);
    }
    if (!converged) {
        throw std::runtime_error("intersection_lanczos: no convergence after " + std::to_string(result.iterations) +
                                 " steps, residual " + format_double(result.residual));
    }
    result.eigenvalue = theta;
    return result;
}

CoderangedValue coderanged_eigenvalue(int m, int q, int t, CoderangedMethod method, const LanczosOptions &options) {
    CoderangedValue value;
    value.q = q;
    value.t = t;
    value.m = m;
    value.experimental = !(q == 2 && t <= 6);
    value.trivial = true;
    auto absorb = [&value](const LanczosResult &r) {
        if (r.trivial) {
            return;
        }
        if (value.trivial || r.eigenvalue > value.eigenvalue) {
            value.eigenvalue = r.eigenvalue;
            value.residual = r.residual;
        }
        value.iterations += r.iterations;
        value.trivial = false;
    };
    if (method == CoderangedMethod::pair_space) {
        PairIntersectionSpace space(m, q, t);
        absorb(intersection_lanczos(space, options));
        return value;
    }
    auto factors = std::make_shared<const CoderangedFactors>(coderanged_factors(m, q, t));
    for (const auto &nu : partitions(t)) {
        IrrepIntersectionSpace space(factors, nu);
        absorb(intersection_lanczos(space, options));
    }
    return value;
}

std::vector<CoderangedValue> km_table_tgtq(int q, int t, int m_first, int m_last, const LanczosOptions &options) {
    std::vector<CoderangedValue> out;
    for (int m = m_first; m <= m_last; ++m) {
        out.push_back(coderanged_eigenvalue(m, q, t, CoderangedMethod::irrep_blocks, options));
    }
    return out;
}

}  // namespace gapcert
