#include "gapcert/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapcert {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            r(j, i) = (*this)(i, j);
        }
    }
    return r;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(i, j) = (*this)(i, j).get_d();
        }
    }
    return m;
}

RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("RationalMatrix: shape mismatch in product");
    }
    RationalMatrix r(a.rows_, b.cols_);
    Rational tmp;
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational &aik = a(i, k);
            if (aik == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (b(k, j) == 0) {
                    continue;
                }
                tmp = aik * b(k, j);
                r(i, j) += tmp;
            }
        }
    }
    return r;
}

RationalMatrix operator-(const RationalMatrix &a, const RationalMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("RationalMatrix: shape mismatch in difference");
    }
    RationalMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < r.data_.size(); ++i) {
        r.data_[i] = a.data_[i] - b.data_[i];
    }
    return r;
}

Rational determinant(RationalMatrix m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("determinant: matrix is not square");
    }
    std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m(pivot, c) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return 0;
        }
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(c, j));
            }
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) {
                continue;
            }
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) {
                m(i, j) -= f * m(c, j);
            }
        }
    }
    return det;
}

bool is_exact_eigenvalue(const RationalMatrix &m, const Rational &r) {
    RationalMatrix shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        shifted(i, i) -= r;
    }
    return determinant(shifted) == 0;
}

IterationResult power_iteration(const Matvec &apply, Eigen::VectorXd start, double tol, int max_iterations) {
    IterationResult res;
    double norm = start.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("power_iteration: zero start vector");
    }
    Eigen::VectorXd x = start / norm;
    Eigen::VectorXd y(x.size());
    double previous = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        apply(x, y);
        double rq = x.dot(y);
        double ny = y.norm();
        res.iterations = it;
        res.value = rq;
        res.residual = (y - rq * x).norm();
        if (ny == 0.0) {
            res.value = 0.0;
            res.residual = 0.0;
            res.converged = true;
            res.vector = x;
            return res;
        }
        if (it > 1 && std::abs(rq - previous) <= tol * std::max(std::abs(rq), 1e-300)) {
            res.converged = true;
            x = y / ny;
            break;
        }
        previous = rq;
        x = y / ny;
    }
    res.vector = x;
    return res;
}

IterationResult largest_singular_value(const Matvec &apply, const Matvec &apply_transpose, Eigen::VectorXd start,
                                       double tol, int max_iterations) {
    Eigen::VectorXd mid;
    Matvec gram = [&](const Eigen::VectorXd &x, Eigen::VectorXd &y) {
        mid.resize(x.size());
        apply(x, mid);
        apply_transpose(mid, y);
    };
    IterationResult r = power_iteration(gram, std::move(start), tol, max_iterations);
    r.value = std::sqrt(std::max(r.value, 0.0));
    return r;
}

std::vector<std::complex<double>> nonzero_eigenvalues(const Eigen::MatrixXd &m, double zero_tol) {
    std::vector<std::complex<double>> out;
    if (m.rows() == 0) {
        return out;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("nonzero_eigenvalues: eigensolver failed");
    }
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        auto z = solver.eigenvalues()[i];
        if (std::abs(z) > zero_tol) {
            out.push_back(z);
        }
    }
    sort_by_magnitude(out);
    return out;
}

void sort_by_magnitude(std::vector<std::complex<double>> &values) {
    std::sort(values.begin(), values.end(), [](const auto &a, const auto &b) {
        double ma = std::abs(a);
        double mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12) {
            return ma > mb;
        }
        if (a.real() != b.real()) {
            return a.real() > b.real();
        }
        return a.imag() > b.imag();
    });
}

bool multiset_equal(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    std::vector<bool> used(b.size(), false);
    for (const auto &x : a) {
        std::size_t best = b.size();
        double best_d = tol;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) {
                continue;
            }
            double d = std::abs(x - b[j]);
            if (d <= best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == b.size()) {
            return false;
        }
        used[best] = true;
    }
    return true;
}

bool set_equal(const std::vector<std::complex<double>> &a, const std::vector<std::complex<double>> &b, double tol) {
    auto covered = [tol](const std::vector<std::complex<double>> &from, const std::vector<std::complex<double>> &in) {
        for (const auto &x : from) {
            bool found = false;
            for (const auto &y : in) {
                if (std::abs(x - y) <= tol) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                return false;
            }
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

}  // namespace gapcert
