#include "gapcert/three_site.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gapcert/format.hpp"
#include "gapcert/weingarten.hpp"

namespace gapcert {

namespace {

Eigen::VectorXd length_powers(const SymmetricGroup &group, double d) {
    Eigen::VectorXd v(group.order());
    for (std::size_t i = 0; i < group.order(); ++i) {
        v[i] = std::pow(d, -group.length(i));
    }
    return v;
}

// W(Q1 Q2) D(Q2) C(Q1)
Eigen::MatrixXd half_product(const SymmetricGroup &group, const Rational &Q1, const Rational &Q2) {
    int t = group.degree();
    Eigen::MatrixXd w = weingarten_matrix(t, Q1 * Q2).matrix.dense(group);
    Eigen::MatrixXd c = gram_matrix(t, Q1).dense(group);
    Eigen::VectorXd d = length_powers(group, Q2.get_d());
    Eigen::MatrixXd wd = w * d.asDiagonal();
    return wd * c;
}

RationalMatrix half_product_exact(const SymmetricGroup &group, const Rational &Q1, const Rational &Q2) {
    int t = group.degree();
    RationalMatrix w = weingarten_matrix(t, Q1 * Q2).matrix.exact(group);
    RationalMatrix c = gram_matrix(t, Q1).exact(group);
    RationalMatrix d(group.order(), group.order());
    for (std::size_t i = 0; i < group.order(); ++i) {
        d(i, i) = rational_pow(Q2, -group.length(i));
    }
    return w * d * c;
}

double spectral_norm(const Eigen::MatrixXd &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::MatrixXd g = m.rows() <= m.cols() ? Eigen::MatrixXd(m * m.transpose()) : Eigen::MatrixXd(m.transpose() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

}  // namespace

Rational t2_eigenvalue(int m, int q) {
    Rational q2(q * q);
    Rational num = q2 * (rational_pow(Rational(q), 2 * m) - 1);
    Rational den = (q2 + 1) * (rational_pow(Rational(q), 2 * m + 2) - 1);
    return num / den;
}

FactorSet factor_set(const Partition &nu, int m, int q) {
    if (q < 2 || m < 1) {
        throw std::invalid_argument("factor_set: requires q >= 2 and m >= 1");
    }
    FactorSet f;
    f.t = nu.size();
    f.nu = nu;
    f.m = m;
    f.q = q;
    f.Q1 = rational_pow(Rational(q), m);
    f.Q2 = q;
    f.Q3 = q;
    const auto &group = symmetric_group(f.t);
    f.left_half = half_product(group, f.Q1, f.Q2);
    f.right_half = half_product(group, f.Q3, f.Q2);
    if (f.Q1 * f.Q2 < f.t || f.Q2 * f.Q3 < f.t) {
        f.pseudo_inverse = true;
        f.warning = "Weingarten dimension below t: pseudo-inverse used";
    }
    return f;
}

MBlock::MBlock(const Partition &nu, int m, int q) : factors_(factor_set(nu, m, q)) {
    const auto &group = symmetric_group(factors_.t);
    const auto &rep = irrep(nu);
    order_ = group.order();
    dim_ = rep.dimension();
    reps_.reserve(order_);
    deranged_.resize(order_);
    for (std::size_t s = 0; s < order_; ++s) {
        reps_.push_back(rep.matrix(s));
        deranged_[s] = group.is_derangement(s);
    }
}

void MBlock::multiply_rep(Eigen::MatrixXd &x, bool inverse) const {
    Eigen::VectorXd row(dim_);
    for (std::size_t s = 0; s < order_; ++s) {
        row = x.row(s).transpose();
        if (inverse) {
            x.row(s) = (reps_[s].transpose() * row).transpose();
        } else {
            x.row(s) = (reps_[s] * row).transpose();
        }
    }
}

void MBlock::mask(Eigen::MatrixXd &x) const {
    for (std::size_t s = 0; s < order_; ++s) {
        if (!deranged_[s]) {
            x.row(s).setZero();
        }
    }
}

void MBlock::apply(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd y = factors_.right_half * in;
    multiply_rep(y, false);
    out.noalias() = factors_.left_half * y;
    multiply_rep(out, true);
}

void MBlock::apply_transpose(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd y = in;
    multiply_rep(y, false);
    Eigen::MatrixXd z = factors_.left_half.transpose() * y;
    multiply_rep(z, true);
    out.noalias() = factors_.right_half.transpose() * z;
}

void MBlock::apply_deranged(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd x = in;
    mask(x);
    apply(x, out);
    mask(out);
}

void MBlock::apply_deranged_transpose(const Eigen::MatrixXd &in, Eigen::MatrixXd &out) const {
    Eigen::MatrixXd x = in;
    mask(x);
    apply_transpose(x, out);
    mask(out);
}

Eigen::MatrixXd MBlock::materialize() const {
    std::size_t n = dimension();
    if (n > kMaxMaterializedDimension) {
        throw std::invalid_argument("MBlock::materialize: dimension above cap");
    }
    Eigen::MatrixXd dense(n, n);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(order_, dim_);
    Eigen::MatrixXd out(order_, dim_);
    for (std::size_t s = 0; s < order_; ++s) {
        for (int i = 0; i < dim_; ++i) {
            e(s, i) = 1.0;
            apply(e, out);
            e(s, i) = 0.0;
            for (std::size_t r = 0; r < order_; ++r) {
                for (int j = 0; j < dim_; ++j) {
                    dense(r * dim_ + j, s * dim_ + i) = out(r, j);
                }
            }
        }
    }
    return dense;
}

Eigen::MatrixXd MBlock::materialize_deranged_block() const {
    Eigen::MatrixXd full = materialize();
    std::vector<Eigen::Index> keep;
    for (std::size_t s = 0; s < order_; ++s) {
        if (deranged_[s]) {
            for (int i = 0; i < dim_; ++i) {
                keep.push_back(static_cast<Eigen::Index>(s * dim_ + i));
            }
        }
    }
    Eigen::MatrixXd block(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < keep.size(); ++b) {
            block(a, b) = full(keep[a], keep[b]);
        }
    }
    return block;
}

NormResult deranged_norm(const Partition &nu, int m, int q, int t, double tol, int max_iterations) {
    if (nu.size() != t) {
        throw std::invalid_argument("deranged_norm: partition does not match t");
    }
    MBlock block(nu, m, q);
    std::size_t rows = symmetric_group(t).order();
    int d = block.irrep_dimension();
    Eigen::VectorXd start = Eigen::VectorXd::Zero(rows * d);
    std::mt19937_64 rng(0x5eed + 131 * t + m);
    std::normal_distribution<double> gauss;
    for (std::size_t s = 0; s < rows; ++s) {
        if (block.deranged_rows()[s]) {
            for (int i = 0; i < d; ++i) {
                start[i * rows + s] = gauss(rng);
            }
        }
    }
    NormResult result;
    if (start.squaredNorm() == 0.0) {
        result.converged = true;
        return result;
    }
    Matvec forward = [&](const Eigen::VectorXd &x, Eigen::VectorXd &y) {
        Eigen::MatrixXd out(rows, d);
        block.apply_deranged(Eigen::Map<const Eigen::MatrixXd>(x.data(), rows, d), out);
        y = Eigen::Map<Eigen::VectorXd>(out.data(), out.size());
    };
    Matvec backward = [&](const Eigen::VectorXd &x, Eigen::VectorXd &y) {
        Eigen::MatrixXd out(rows, d);
        block.apply_deranged_transpose(Eigen::Map<const Eigen::MatrixXd>(x.data(), rows, d), out);
        y = Eigen::Map<Eigen::VectorXd>(out.data(), out.size());
    };
    IterationResult it = largest_singular_value(forward, backward, start, tol, max_iterations);
    result.value = it.value;
    result.residual = it.residual;
    result.iterations = it.iterations;
    result.converged = it.converged;
    if (!it.converged) {
        throw std::runtime_error("deranged_norm: power iteration did not converge, residual " +
                                 format_double(it.residual) + ", last value " + format_double(it.value));
    }
    return result;
}

std::vector<std::complex<double>> deranged_eigenvalues(const Partition &nu, int m, int q) {
    MBlock block(nu, m, q);
    return nonzero_eigenvalues(block.materialize_deranged_block(), 1e-13);
}

RationalMatrix deranged_block_exact(const Partition &nu, int m, int q) {
    int t = nu.size();
    const auto &rep = irrep(nu);
    if (!rep.is_one_dimensional()) {
        throw std::invalid_argument("deranged_block_exact: only one-dimensional irreps are exact");
    }
    const auto &group = symmetric_group(t);
    Rational Q1 = rational_pow(Rational(q), m);
    Rational Q(q);
    RationalMatrix left = half_product_exact(group, Q1, Q);
    RationalMatrix right = half_product_exact(group, Q, Q);
    std::size_t n = group.order();
    std::vector<int> sign(n);
    for (std::size_t s = 0; s < n; ++s) {
        sign[s] = rep.sign_value(group.element(s));
    }
    std::vector<std::size_t> der = group.derangements();
    RationalMatrix block(der.size(), der.size());
    // M[a,b] = sign(a) sum_rho left[a,rho] sign(rho) right[rho,b]
    for (std::size_t a = 0; a < der.size(); ++a) {
        for (std::size_t b = 0; b < der.size(); ++b) {
            Rational sum = 0;
            for (std::size_t r = 0; r < n; ++r) {
                Rational term = left(der[a], r) * right(r, der[b]);
                if (sign[r] < 0) {
                    sum -= term;
                } else {
                    sum += term;
                }
            }
            block(a, b) = sign[der[a]] < 0 ? Rational(-sum) : sum;
        }
    }
    return block;
}

Rational deranged_norm_exact(const Partition &nu, int m, int q) {
    RationalMatrix block = deranged_block_exact(nu, m, q);
    if (block.rows() != 1) {
        throw std::invalid_argument("deranged_norm_exact: block is not 1x1");
    }
    return abs(block(0, 0));
}

SubleadingBound km_subleading_bound(int m, int q, int t) {
    if (t > q) {
        throw std::invalid_argument("km_subleading_bound: t > q needs the coderanged computation");
    }
    SubleadingBound out;
    out.m = m;
    out.q = q;
    out.t = t;
    for (int k = 2; k <= t; ++k) {
        for (const auto &nu : partitions(k)) {
            NormResult r = deranged_norm(nu, m, q, k);
            out.per_irrep.push_back(IrrepNorm{nu, r.value, r.residual, r.converged});
            out.bound = std::max(out.bound, r.value);
        }
    }
    return out;
}

static double restricted_norm(const Eigen::MatrixXd &m, const SymmetricGroup &group, bool rows) {
    std::vector<std::size_t> der = group.derangements();
    Eigen::MatrixXd sub = rows ? Eigen::MatrixXd(der.size(), m.cols()) : Eigen::MatrixXd(m.rows(), der.size());
    for (std::size_t a = 0; a < der.size(); ++a) {
        if (rows) {
            sub.row(a) = m.row(der[a]);
        } else {
            sub.col(a) = m.col(der[a]);
        }
    }
    return spectral_norm(sub);
}

double HalfOperator::row_restricted_norm() const { return restricted_norm(entries, symmetric_group(t), true); }
double HalfOperator::column_restricted_norm() const { return restricted_norm(entries, symmetric_group(t), false); }

HalfOperator half_operator(int t, const Rational &Q1, const Rational &Q2) {
    const auto &group = symmetric_group(t);
    std::size_t n = group.order();
    std::vector<double> wg = to_double(weingarten_matrix(t, Q1 * Q2).matrix.values);
    double q1 = Q1.get_d();
    double q2 = Q2.get_d();
    HalfOperator h;
    h.t = t;
    h.Q1 = Q1;
    h.Q2 = Q2;
    h.entries = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        double yr = std::pow(q2, -group.length(r));
        for (std::size_t s = 0; s < n; ++s) {
            double xs = std::pow(q1, -group.length(group.relative(r, s))) * yr;
            for (std::size_t u = 0; u < n; ++u) {
                h.entries(s, u) += xs * wg[group.class_of(group.relative(r, u))];
            }
        }
    }
    return h;
}

RationalMatrix half_operator_exact(int t, const Rational &Q1, const Rational &Q2) {
    const auto &group = symmetric_group(t);
    std::size_t n = group.order();
    ClassFunction wg = weingarten_matrix(t, Q1 * Q2).matrix.values;
    RationalMatrix h(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        Rational yr = rational_pow(Q2, -group.length(r));
        for (std::size_t s = 0; s < n; ++s) {
            Rational xs = rational_pow(Q1, -group.length(group.relative(r, s))) * yr;
            for (std::size_t u = 0; u < n; ++u) {
                h(s, u) += xs * wg[group.class_of(group.relative(r, u))];
            }
        }
    }
    return h;
}

HbarMajorant hbar_majorant(int t) {
    if (t < 2 || t > 6) {
        throw std::invalid_argument("hbar_majorant: supported for 2 <= t <= 6");
    }
    const auto &group = symmetric_group(t);
    std::size_t n = group.order();
    WgRationalForm form = wg_rational_form(t);
    std::size_t nc = form.numerators.size();
    int max_g = 0;
    for (const auto &g : form.numerators) {
        max_g = std::max(max_g, g.degree());
    }
    int span = (t - 1) + max_g + 1;
    std::vector<std::vector<std::pair<int, long>>> terms(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        const auto &coeffs = form.numerators[c].coefficients();
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] != 0) {
                terms[c].emplace_back(static_cast<int>(k), coeffs[k].get_si());
            }
        }
    }

    HbarMajorant out;
    out.t = t;
    out.exponent = (t + 1) / 2;
    out.denominator_value = form.denominator.evaluate(Rational(1, t * t)).get_d();
    out.entries = Eigen::MatrixXd::Zero(n, n);
    out.min_degree_deranged_rows = 1 << 20;
    out.min_degree_deranged_columns = 1 << 20;

    std::vector<double> weight(2 * span + 1);
    for (std::size_t k = 0; k < weight.size(); ++k) {
        weight[k] = std::pow(static_cast<double>(t), -static_cast<int>(k));
    }
    std::vector<long> acc(n * span * span);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(acc.begin(), acc.end(), 0L);
        for (std::size_t r = 0; r < n; ++r) {
            int a = group.length(group.relative(r, s));
            int b = group.length(r);
            for (std::size_t u = 0; u < n; ++u) {
                long *cell = &acc[u * span * span];
                for (auto [k, v] : terms[group.class_of(group.relative(r, u))]) {
                    cell[(a + k) * span + (b + k)] += v;
                }
            }
        }
        for (std::size_t u = 0; u < n; ++u) {
            const long *cell = &acc[u * span * span];
            double value = 0.0;
            int min_degree = 1 << 20;
            for (int i = 0; i < span; ++i) {
                for (int j = 0; j < span; ++j) {
                    long v = cell[i * span + j];
                    if (v != 0) {
                        value += std::abs(static_cast<double>(v)) * weight[i + j];
                        min_degree = std::min(min_degree, i + j);
                    }
                }
            }
            out.entries(s, u) = value / out.denominator_value;
            if (group.is_derangement(s)) {
                out.min_degree_deranged_rows = std::min(out.min_degree_deranged_rows, min_degree);
            }
            if (group.is_derangement(u)) {
                out.min_degree_deranged_columns = std::min(out.min_degree_deranged_columns, min_degree);
            }
        }
    }
    out.row_norm = restricted_norm(out.entries, group, true);
    out.column_norm = restricted_norm(out.entries, group, false);
    return out;
}

double hbar_domination_margin(const HbarMajorant &hbar, int q, const Rational &Q1, const Rational &Q2) {
    HalfOperator h = half_operator(hbar.t, Q1, Q2);
    double scale = std::pow(static_cast<double>(hbar.t) / q, hbar.exponent);
    const auto &group = symmetric_group(hbar.t);
    double margin = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < group.order(); ++s) {
        for (std::size_t u = 0; u < group.order(); ++u) {
            if (group.is_derangement(s) || group.is_derangement(u)) {
                margin = std::max(margin, std::abs(h.entries(s, u)) - scale * hbar.entries(s, u));
            }
        }
    }
    return margin;
}

}  // namespace gapcert
