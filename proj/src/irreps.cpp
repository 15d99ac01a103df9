#include "gapcert/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gapcert {

namespace {

void extend_tableaux(const std::vector<int> &shape, std::vector<int> &filled, StandardTableau &current, int entry,
                     int t, std::vector<StandardTableau> &out) {
    if (entry == t) {
        out.push_back(current);
        return;
    }
    for (std::size_t r = 0; r < shape.size(); ++r) {
        if (filled[r] >= shape[r]) {
            continue;
        }
        if (r > 0 && filled[r] >= filled[r - 1]) {
            continue;
        }
        current.row[entry] = static_cast<int>(r);
        current.column[entry] = filled[r];
        ++filled[r];
        extend_tableaux(shape, filled, current, entry + 1, t, out);
        --filled[r];
    }
}

Integer mn_recursive(std::vector<int> lambda, const std::vector<int> &mu, std::size_t pos,
                     std::map<std::pair<std::vector<int>, std::size_t>, Integer> &memo) {
    if (pos == mu.size()) {
        return 1;
    }
    while (!lambda.empty() && lambda.back() == 0) {
        lambda.pop_back();
    }
    auto key = std::make_pair(lambda, pos);
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    int n = static_cast<int>(lambda.size());
    std::vector<int> beta(n);
    for (int i = 0; i < n; ++i) {
        beta[i] = lambda[i] + (n - 1 - i);
    }
    int r = mu[pos];
    Integer total = 0;
    for (int i = 0; i < n; ++i) {
        int target = beta[i] - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) {
            continue;
        }
        int between = 0;
        for (int b : beta) {
            if (b > target && b < beta[i]) {
                ++between;
            }
        }
        std::vector<int> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        std::vector<int> next(n);
        for (int k = 0; k < n; ++k) {
            next[k] = nb[k] - (n - 1 - k);
        }
        Integer sub = mn_recursive(next, mu, pos + 1, memo);
        total += (between % 2 == 0) ? sub : Integer(-sub);
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

std::vector<StandardTableau> standard_tableaux(const Partition &shape) {
    int t = shape.size();
    std::vector<StandardTableau> out;
    StandardTableau current{std::vector<int>(t), std::vector<int>(t)};
    std::vector<int> filled(shape.rows(), 0);
    extend_tableaux(shape.parts(), filled, current, 0, t, out);
    return out;
}

Integer character(const Partition &nu, const Partition &cycle_type) {
    if (nu.size() != cycle_type.size()) {
        throw std::invalid_argument("character: partitions of different sizes");
    }
    std::map<std::pair<std::vector<int>, std::size_t>, Integer> memo;
    return mn_recursive(nu.parts(), cycle_type.parts(), 0, memo);
}

IrrepTable::IrrepTable(const Partition &nu) : label_(nu), t_(nu.size()) {
    if (t_ < 1 || t_ > kMaxEnumerationDegree) {
        throw std::invalid_argument("build_irrep: supported for 1 <= t <= 8");
    }
    auto tableaux = standard_tableaux(nu);
    dim_ = static_cast<int>(tableaux.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < dim_; ++i) {
        index[tableaux[i].row] = i;
    }
    generators_.reserve(t_ - 1);
    for (int k = 0; k + 1 < t_; ++k) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim_, dim_);
        for (int i = 0; i < dim_; ++i) {
            const auto &T = tableaux[i];
            if (T.row[k] == T.row[k + 1]) {
                g(i, i) = 1.0;
            } else if (T.column[k] == T.column[k + 1]) {
                g(i, i) = -1.0;
            } else {
                double r = T.content(k + 1) - T.content(k);
                std::vector<int> swapped = T.row;
                std::swap(swapped[k], swapped[k + 1]);
                int j = index.at(swapped);
                g(i, i) = 1.0 / r;
                g(j, i) = std::sqrt(1.0 - 1.0 / (r * r));
            }
        }
        generators_.push_back(g);
    }

    for (const auto &c : conjugacy_classes(t_)) {
        characters_.push_back(character(nu, c.cycle_type));
    }

    auto residual_of = [this](const Eigen::MatrixXd &m) {
        return (m * m.transpose() - Eigen::MatrixXd::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    };
    for (const auto &g : generators_) {
        residual_ = std::max(residual_, residual_of(g));
    }

    if (t_ <= 7) {
        const auto &group = symmetric_group(t_);
        std::size_t n = group.order();
        cache_.assign(n, Eigen::MatrixXd());
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> queue{group.identity_index()};
        cache_[group.identity_index()] = Eigen::MatrixXd::Identity(dim_, dim_);
        seen[group.identity_index()] = true;
        std::vector<std::size_t> gen_index;
        for (int k = 0; k + 1 < t_; ++k) {
            gen_index.push_back(group.index_of(Permutation::transposition(t_, k, k + 1)));
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t s = queue[head];
            for (int k = 0; k + 1 < t_; ++k) {
                std::size_t next = group.product(s, gen_index[k]);
                if (!seen[next]) {
                    seen[next] = true;
                    cache_[next] = cache_[s] * generators_[k];
                    queue.push_back(next);
                }
            }
        }
        for (const auto &m : cache_) {
            residual_ = std::max(residual_, residual_of(m));
        }
    }
}

Eigen::MatrixXd IrrepTable::matrix(const Permutation &sigma) const {
    if (sigma.degree() != t_) {
        throw std::invalid_argument("IrrepTable::matrix: degree mismatch");
    }
    // Peel descents from the right: sigma = sigma' ∘ s_k with one fewer inversion.
    std::vector<int> word;
    std::vector<int> img = sigma.images();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k + 1 < t_; ++k) {
            if (img[k] > img[k + 1]) {
                std::swap(img[k], img[k + 1]);
                word.push_back(k);
                changed = true;
            }
        }
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim_, dim_);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        m = m * generators_[*it];
    }
    return m;
}

Eigen::MatrixXd IrrepTable::matrix(std::size_t element_index) const {
    if (!cache_.empty()) {
        return cache_[element_index];
    }
    return matrix(Permutation::unrank(t_, element_index));
}

int IrrepTable::sign_value(const Permutation &sigma) const {
    if (dim_ != 1) {
        throw std::logic_error("sign_value: irrep is not one-dimensional");
    }
    if (label_.rows() == 1) {
        return 1;
    }
    return sigma.length() % 2 == 0 ? 1 : -1;
}

IrrepTable build_irrep(const Partition &nu) { return IrrepTable(nu); }

const IrrepTable &irrep(const Partition &nu) {
    static std::mutex mutex;
    static std::map<std::vector<int>, std::unique_ptr<IrrepTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(nu.parts());
    if (it == cache.end()) {
        it = cache.emplace(nu.parts(), std::make_unique<IrrepTable>(nu)).first;
    }
    return *it->second;
}

CanonicalIdempotent canonical_idempotent(const Partition &nu) {
    int t = nu.size();
    CanonicalIdempotent p;
    p.label = nu;
    Rational scale(Integer(nu.hook_dimension()), Integer(factorial(t)));
    scale.canonicalize();
    for (const auto &c : conjugacy_classes(t)) {
        p.class_values.push_back(scale * Rational(character(nu, c.cycle_type)));
    }
    return p;
}

Eigen::MatrixXd CanonicalIdempotent::matrix(const SymmetricGroup &group) const {
    std::size_t n = group.order();
    std::vector<double> values(class_values.size());
    for (std::size_t c = 0; c < values.size(); ++c) {
        values[c] = class_values[c].get_d();
    }
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = values[group.class_of(group.relative(i, j))];
        }
    }
    return m;
}

SchurReport schur_orthogonality_check(const Partition &mu, const Partition &nu, double tolerance) {
    if (mu.size() != nu.size()) {
        throw std::invalid_argument("schur_orthogonality_check: different degrees");
    }
    int t = nu.size();
    const auto &group = symmetric_group(t);
    const auto &a = irrep(nu);
    const auto &b = irrep(mu);
    int da = a.dimension();
    int db = b.dimension();
    // S[(i,j),(k,n)] = sum_rho V_nu(rho)_{ij} V_mu(rho)_{kn}
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(da * da, db * db);
    for (std::size_t r = 0; r < group.order(); ++r) {
        Eigen::MatrixXd va = a.matrix(r);
        Eigen::MatrixXd vb = b.matrix(r);
        Eigen::Map<Eigen::VectorXd> fa(va.data(), da * da);
        Eigen::Map<Eigen::VectorXd> fb(vb.data(), db * db);
        sum.noalias() += fa * fb.transpose();
    }
    double expected_scale = static_cast<double>(group.order()) / da;
    double deviation = 0.0;
    for (int j = 0; j < da; ++j) {
        for (int i = 0; i < da; ++i) {
            for (int n = 0; n < db; ++n) {
                for (int k = 0; k < db; ++k) {
                    double expected = (mu == nu && i == k && j == n) ? expected_scale : 0.0;
                    deviation = std::max(deviation, std::abs(sum(i + j * da, k + n * db) - expected));
                }
            }
        }
    }
    return SchurReport{deviation <= tolerance * std::max(1.0, expected_scale), deviation};
}

}  // namespace gapcert
