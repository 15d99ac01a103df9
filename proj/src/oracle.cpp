#include "gapcert/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>

#include "gapcert/format.hpp"
#include "gapcert/symmetric_group.hpp"
#include "gapcert/weingarten.hpp"

namespace gapcert {

namespace {

void require_basis_regime(int t, int q, const char *who) {
    if (t > q) {
        throw std::invalid_argument(std::string(who) +
                                    ": permutation states are dependent for t > q; use the coderanged module");
    }
}

// Coefficients of the Haar projector on one block, for each combination of block digits.
template <class Value>
struct BlockCoefficients {
    std::size_t order = 0;
    int length = 0;
    std::vector<Value> wg;           // Wg(tau^{-1} pi, D) as order x order, row tau
    std::vector<Value> inverse_pow;  // q^{-l}, l = 0..t
};

template <class Value>
BlockCoefficients<Value> block_coefficients(int t, int q, int length) {
    const auto &group = symmetric_group(t);
    BlockCoefficients<Value> out;
    out.order = group.order();
    out.length = length;
    Rational D = rational_pow(Rational(q), length);
    WeingartenMatrix w = weingarten_matrix(t, D);
    out.wg.resize(out.order * out.order);
    for (std::size_t a = 0; a < out.order; ++a) {
        for (std::size_t b = 0; b < out.order; ++b) {
            const Rational &v = w.matrix.values[group.class_of(group.relative(a, b))];
            if constexpr (std::is_same_v<Value, double>) {
                out.wg[a * out.order + b] = v.get_d();
            } else {
                out.wg[a * out.order + b] = v;
            }
        }
    }
    for (int l = 0; l <= t; ++l) {
        Rational p = rational_pow(Rational(1, q), l);
        if constexpr (std::is_same_v<Value, double>) {
            out.inverse_pow.push_back(p.get_d());
        } else {
            out.inverse_pow.push_back(p);
        }
    }
    return out;
}

template <class Value, class Sink>
void fill_block_projector(const TupleSpace &space, int q, int first, int last, Sink &&sink) {
    if (first < 0 || last >= space.sites() || first > last) {
        throw std::invalid_argument("block_projector: invalid site range");
    }
    int t = space.degree();
    const auto &group = symmetric_group(t);
    auto coeffs = block_coefficients<Value>(t, q, last - first + 1);
    std::size_t n = group.order();
    std::vector<Value> overlap(n);
    std::vector<Value> out(n);
    std::size_t uniform_stride = 0;
    for (int s = first; s <= last; ++s) {
        uniform_stride += space.stride(s);
    }
    for (std::size_t col = 0; col < space.dimension(); ++col) {
        std::size_t base = col;
        for (int s = first; s <= last; ++s) {
            base -= space.digit(col, s) * space.stride(s);
        }
        for (std::size_t pi = 0; pi < n; ++pi) {
            Value v = coeffs.inverse_pow[0];
            for (int s = first; s <= last; ++s) {
                v *= coeffs.inverse_pow[group.length(group.relative(pi, space.digit(col, s)))];
            }
            overlap[pi] = v;
        }
        for (std::size_t tau = 0; tau < n; ++tau) {
            Value acc = Value(0);
            for (std::size_t pi = 0; pi < n; ++pi) {
                acc += coeffs.wg[tau * n + pi] * overlap[pi];
            }
            if (acc != Value(0)) {
                sink(base + tau * uniform_stride, col, acc);
            }
        }
    }
}

double magnitude_tolerance() { return 1e-9; }

}  // namespace

TupleSpace::TupleSpace(int N, int t) : N_(N), t_(t) {
    if (N < 1 || t < 1) {
        throw std::invalid_argument("TupleSpace: requires N >= 1 and t >= 1");
    }
    if (t > kMaxEnumerationDegree) {
        throw std::invalid_argument("TupleSpace: t too large");
    }
    order_ = factorial(t);
    dim_ = 1;
    for (int k = 0; k < N; ++k) {
        stride_.push_back(dim_);
        if (dim_ > kMaxOracleDimension / order_) {
            throw std::invalid_argument("TupleSpace: dimension (t!)^N exceeds the cap " +
                                        std::to_string(kMaxOracleDimension));
        }
        dim_ *= order_;
    }
}

PermutationTuple TupleSpace::tuple(std::size_t index) const {
    const auto &group = symmetric_group(t_);
    PermutationTuple out;
    for (int k = 0; k < N_; ++k) {
        out.push_back(group.element(digit(index, k)));
    }
    return out;
}

bool TupleSpace::is_complete_derangement(std::size_t index) const {
    return gapcert::is_complete_derangement(tuple(index));
}

CoefficientOperator block_projector(int N, int t, int q, int first, int last) {
    TupleSpace space(N, t);
    CoefficientOperator op{N, t, q, Eigen::MatrixXd::Zero(space.dimension(), space.dimension())};
    fill_block_projector<double>(space, q, first, last,
                                 [&op](std::size_t r, std::size_t c, double v) { op.matrix(r, c) = v; });
    return op;
}

RationalMatrix block_projector_exact(int N, int t, int q, int first, int last) {
    TupleSpace space(N, t);
    RationalMatrix out(space.dimension(), space.dimension());
    fill_block_projector<Rational>(space, q, first, last,
                                   [&out](std::size_t r, std::size_t c, const Rational &v) { out(r, c) = v; });
    return out;
}

CoefficientOperator gate_operator(int N, int t, int q, int i) {
    require_basis_regime(t, q, "gate_operator");
    if (i < 1 || i >= N) {
        throw std::invalid_argument("gate_operator: requires 1 <= i < N");
    }
    return block_projector(N, t, q, i - 1, i);
}

TransferMatrices transfer_matrices(int N, int t, int q) {
    require_basis_regime(t, q, "transfer_matrices");
    if (N < 2) {
        throw std::invalid_argument("transfer_matrices: requires N >= 2");
    }
    TupleSpace space(N, t);
    Eigen::Index dim = static_cast<Eigen::Index>(space.dimension());
    Eigen::MatrixXd stair = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd odd = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd even = Eigen::MatrixXd::Identity(dim, dim);
    for (int i = 1; i < N; ++i) {
        Eigen::MatrixXd g = gate_operator(N, t, q, i).matrix;
        stair = g * stair;
        if (i % 2 == 1) {
            odd = g * odd;
        } else {
            even = g * even;
        }
    }
    TransferMatrices out;
    out.staircase = {N, t, q, std::move(stair)};
    out.brickwork = {N, t, q, odd * even};
    return out;
}

std::vector<std::complex<double>> nonzero_spectrum(const Eigen::MatrixXd &m) {
    auto values = nonzero_eigenvalues(m, 1e-9);
    sort_by_magnitude(values);
    return values;
}

double subleading_magnitude(const std::vector<std::complex<double>> &spectrum) {
    double best = 0.0;
    for (const auto &z : spectrum) {
        double a = std::abs(z);
        if (a < 1.0 - magnitude_tolerance()) {
            best = std::max(best, a);
        }
    }
    return best;
}

CoefficientOperator km_operator(int m, int t, int q) {
    require_basis_regime(t, q, "km_operator");
    if (m < 1) {
        throw std::invalid_argument("km_operator: requires m >= 1");
    }
    int N = m + 2;
    Eigen::MatrixXd pi = block_projector(N, t, q, 0, m).matrix;
    Eigen::MatrixXd g = block_projector(N, t, q, m, m + 1).matrix;
    return {N, t, q, pi * g * pi};
}

RationalMatrix km_operator_exact(int m, int t, int q) {
    require_basis_regime(t, q, "km_operator_exact");
    if (m < 1) {
        throw std::invalid_argument("km_operator_exact: requires m >= 1");
    }
    int N = m + 2;
    RationalMatrix pi = block_projector_exact(N, t, q, 0, m);
    RationalMatrix g = block_projector_exact(N, t, q, m, m + 1);
    return pi * g * pi;
}

KmDirect km_direct(int m, int t, int q) {
    KmDirect out;
    out.m = m;
    out.t = t;
    out.q = q;
    out.spectrum = nonzero_spectrum(km_operator(m, t, q).matrix);
    out.value = subleading_magnitude(out.spectrum);
    return out;
}

KmExact km_direct_exact(int m, int t, int q, const Integer &max_den) {
    KmExact out;
    KmDirect approx = km_direct(m, t, q);
    out.approximate = approx.value;
    RationalMatrix k = km_operator_exact(m, t, q);
    for (const Rational &r : convergents(approx.value, max_den)) {
        if (std::abs(r.get_d() - approx.value) > 1e-6 * std::max(1.0, approx.value)) {
            continue;
        }
        if (is_exact_eigenvalue(k, r)) {
            out.found = true;
            out.value = r;
            break;
        }
    }
    return out;
}

DerangedSplit deranged_split_check(int N, int t, int q, double tol) {
    DerangedSplit out;
    TransferMatrices tm = transfer_matrices(N, t, q);
    const Eigen::MatrixXd &T = tm.staircase.matrix;
    out.full = nonzero_spectrum(T);
    TupleSpace space(N, t);
    std::vector<Eigen::Index> der;
    std::vector<Eigen::Index> rest;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        (space.is_complete_derangement(i) ? der : rest).push_back(static_cast<Eigen::Index>(i));
    }
    auto sub = [&T](const std::vector<Eigen::Index> &idx) {
        Eigen::MatrixXd s(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                s(a, b) = T(idx[a], idx[b]);
            }
        }
        return s;
    };
    if (!der.empty()) {
        out.deranged = nonzero_spectrum(sub(der));
    }
    std::vector<std::complex<double>> nonderanged;
    if (!rest.empty()) {
        nonderanged = nonzero_spectrum(sub(rest));
    }
    std::vector<std::complex<double>> blocks = out.deranged;
    blocks.insert(blocks.end(), nonderanged.begin(), nonderanged.end());
    out.block_multiset = multiset_equal(out.full, blocks, tol);

    if (t == 1) {
        out.passed = out.full.size() == 1 && std::abs(out.full[0] - 1.0) < tol;
        return out;
    }
    out.lower_moment = nonzero_spectrum(transfer_matrices(N, t - 1, q).staircase.matrix);
    std::vector<std::complex<double>> joined = out.deranged;
    joined.insert(joined.end(), out.lower_moment.begin(), out.lower_moment.end());
    out.passed = set_equal(out.full, joined, tol);
    return out;
}

Eigen::MatrixXd right_action(int N, int t, const Permutation &rho) {
    TupleSpace space(N, t);
    const auto &group = symmetric_group(t);
    std::size_t r = group.index_of(rho);
    Eigen::Index dim = static_cast<Eigen::Index>(space.dimension());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t c = 0; c < space.dimension(); ++c) {
        std::size_t row = 0;
        for (int k = 0; k < N; ++k) {
            row += group.product(space.digit(c, k), r) * space.stride(k);
        }
        out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) = 1.0;
    }
    return out;
}

double embedding_residual(int N, int t, int k, int q, int site) {
    if (k < 1 || k >= t) {
        throw std::invalid_argument("embedding_residual: requires 1 <= k < t");
    }
    require_basis_regime(t, q, "embedding_residual");
    if (site < 1 || site >= N) {
        throw std::invalid_argument("embedding_residual: requires 1 <= site < N");
    }
    TupleSpace big(N, t);
    TupleSpace small(N, k);
    const auto &gt = symmetric_group(t);
    const auto &gk = symmetric_group(k);
    std::vector<std::size_t> embed(small.dimension());
    std::unordered_map<std::size_t, std::size_t> preimage;
    for (std::size_t i = 0; i < small.dimension(); ++i) {
        std::size_t idx = 0;
        for (int s = 0; s < N; ++s) {
            idx += gt.index_of(gk.element(small.digit(i, s)).extended(t)) * big.stride(s);
        }
        embed[i] = idx;
        preimage[idx] = i;
    }
    // Sparse columns of both gates, kept only on embedded inputs.
    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, double>>> cols_t;
    fill_block_projector<double>(big, q, site - 1, site, [&](std::size_t r, std::size_t c, double v) {
        if (preimage.count(c)) {
            cols_t[c].emplace_back(r, v);
        }
    });
    std::unordered_map<std::size_t, std::unordered_map<std::size_t, double>> cols_k;
    fill_block_projector<double>(small, q, site - 1, site,
                                 [&](std::size_t r, std::size_t c, double v) { cols_k[c][r] = v; });
    double residual = 0.0;
    for (std::size_t c = 0; c < small.dimension(); ++c) {
        auto expect = cols_k[c];
        for (const auto &[r, v] : cols_t[embed[c]]) {
            auto it = preimage.find(r);
            double target = 0.0;
            if (it != preimage.end() && expect.count(it->second)) {
                target = expect[it->second];
                expect.erase(it->second);
            }
            residual = std::max(residual, std::abs(v - target));
        }
        // Entries of the small gate with no counterpart in the big one.
        for (const auto &[r, v] : expect) {
            residual = std::max(residual, std::abs(v));
        }
    }
    return residual;
}

double staircase_sev(int N, int t, int q) {
    return subleading_magnitude(nonzero_spectrum(transfer_matrices(N, t, q).staircase.matrix));
}

}  // namespace gapcert
