#include "gapcert/weingarten.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "gapcert/irreps.hpp"

namespace gapcert {

namespace {

struct CharacterTable {
    std::vector<Partition> irreps;
    std::vector<ConjugacyClass> classes;
    std::vector<std::vector<Integer>> chi;  // chi[irrep][class]
    std::vector<Integer> dims;
};

const CharacterTable &character_table(int t) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CharacterTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(t);
    if (it != cache.end()) {
        return *it->second;
    }
    auto table = std::make_unique<CharacterTable>();
    table->irreps = partitions(t);
    table->classes = conjugacy_classes(t);
    for (const auto &nu : table->irreps) {
        std::vector<Integer> row;
        for (const auto &c : table->classes) {
            row.push_back(character(nu, c.cycle_type));
        }
        table->dims.push_back(Integer(static_cast<unsigned long>(nu.hook_dimension())));
        table->chi.push_back(std::move(row));
    }
    return *cache.emplace(t, std::move(table)).first->second;
}

int cycle_length_of_class(const ConjugacyClass &c) { return c.cycle_type.size() - c.cycle_type.rows(); }

}  // namespace

std::vector<double> to_double(const ClassFunction &f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i].get_d();
    }
    return out;
}

Rational GroupMatrix::entry(const Permutation &sigma, const Permutation &tau) const {
    Partition type(compose(sigma.inverse(), tau).cycle_type());
    const auto &classes = character_table(t).classes;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].cycle_type == type) {
            return values[c];
        }
    }
    throw std::logic_error("GroupMatrix::entry: unknown class");
}

Eigen::MatrixXd dense_group_matrix(const SymmetricGroup &group, const std::vector<double> &class_values) {
    std::size_t n = group.order();
    Eigen::MatrixXd m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) = class_values[group.class_of(group.relative(i, j))];
        }
    }
    return m;
}

Eigen::MatrixXd GroupMatrix::dense(const SymmetricGroup &group) const { return dense_group_matrix(group, to_double(values)); }

RationalMatrix GroupMatrix::exact(const SymmetricGroup &group) const {
    std::size_t n = group.order();
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = values[group.class_of(group.relative(i, j))];
        }
    }
    return m;
}

template <class T>
static std::vector<T> convolve_impl(int t, const std::vector<T> &a, const std::vector<T> &b) {
    const auto &group = symmetric_group(t);
    const auto &classes = group.classes();
    std::vector<T> out(classes.size(), T(0));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        std::size_t g = classes[c].representative_index;
        T sum(0);
        for (std::size_t h = 0; h < group.order(); ++h) {
            sum += a[group.class_of(h)] * b[group.class_of(group.relative(h, g))];
        }
        out[c] = sum;
    }
    return out;
}

ClassFunction convolve(int t, const ClassFunction &a, const ClassFunction &b) { return convolve_impl(t, a, b); }
std::vector<double> convolve(int t, const std::vector<double> &a, const std::vector<double> &b) {
    return convolve_impl(t, a, b);
}

Rational class_eigenvalue(const Partition &lambda, const Rational &d) {
    Rational r = 1;
    for (int c : lambda.contents()) {
        r *= 1 + Rational(c) / d;
    }
    return r;
}

GroupMatrix gram_matrix(int t, const Rational &d) {
    if (d <= 0) {
        throw std::invalid_argument("gram_matrix: dimension must be positive");
    }
    GroupMatrix g;
    g.t = t;
    for (const auto &c : character_table(t).classes) {
        g.values.push_back(rational_pow(d, -cycle_length_of_class(c)));
    }
    return g;
}

WeingartenMatrix weingarten_matrix(int t, const Rational &d) {
    const auto &table = character_table(t);
    WeingartenMatrix w;
    w.d = d;
    w.invertible = d >= t;
    w.matrix.t = t;
    w.matrix.values.assign(table.classes.size(), Rational(0));
    Rational tfact(Integer(factorial(t)));
    for (std::size_t l = 0; l < table.irreps.size(); ++l) {
        Rational c = class_eigenvalue(table.irreps[l], d);
        if (c == 0) {
            continue;
        }
        Rational scale = Rational(table.dims[l]) / (tfact * c);
        for (std::size_t k = 0; k < table.classes.size(); ++k) {
            w.matrix.values[k] += scale * Rational(table.chi[l][k]);
        }
    }
    return w;
}

FloatWeingarten weingarten_float(int t, double d) {
    const auto &table = character_table(t);
    FloatWeingarten w;
    std::size_t nc = table.classes.size();
    w.values.assign(nc, 0.0);
    std::vector<double> x(nc, 0.0);
    double tfact = static_cast<double>(factorial(t));
    for (std::size_t l = 0; l < table.irreps.size(); ++l) {
        double c = 1.0;
        for (int content : table.irreps[l].contents()) {
            c *= 1.0 + content / d;
        }
        if (table.irreps[l].rows() > d) {
            continue;
        }
        double dim = table.dims[l].get_d();
        for (std::size_t k = 0; k < nc; ++k) {
            w.values[k] += dim * table.chi[l][k].get_d() / (tfact * c);
            x[k] += dim * table.chi[l][k].get_d() / tfact;
        }
    }
    if (t <= kMaxEnumerationDegree) {
        std::vector<double> gram(nc);
        for (std::size_t k = 0; k < nc; ++k) {
            gram[k] = std::pow(d, -cycle_length_of_class(table.classes[k]));
        }
        auto wc = convolve(t, w.values, gram);
        for (std::size_t k = 0; k < nc; ++k) {
            w.residual = std::max(w.residual, std::abs(wc[k] - x[k]));
        }
    }
    return w;
}

GroupMatrix x_projector(int t, const Integer &d) {
    const auto &table = character_table(t);
    GroupMatrix x;
    x.t = t;
    x.values.assign(table.classes.size(), Rational(0));
    Rational tfact(Integer(factorial(t)));
    for (std::size_t l = 0; l < table.irreps.size(); ++l) {
        if (table.irreps[l].rows() > d) {
            continue;
        }
        Rational scale = Rational(table.dims[l]) / tfact;
        for (std::size_t k = 0; k < table.classes.size(); ++k) {
            x.values[k] += scale * Rational(table.chi[l][k]);
        }
    }
    return x;
}

Rational WgRationalForm::evaluate(std::size_t class_index, const Rational &z) const {
    return numerators[class_index].evaluate(z) / denominator.evaluate(z);
}

WgRationalForm wg_rational_form(int t) {
    if (t < 1 || t > kMaxEnumerationDegree) {
        throw std::invalid_argument("wg_rational_form: supported for 1 <= t <= 8");
    }
    const auto &table = character_table(t);
    // content c -> multiplicity, per partition
    std::vector<std::map<int, int>> mult(table.irreps.size());
    std::map<int, int> max_mult;
    for (std::size_t l = 0; l < table.irreps.size(); ++l) {
        for (int c : table.irreps[l].contents()) {
            if (c != 0) {
                ++mult[l][c];
            }
        }
        for (auto [c, k] : mult[l]) {
            max_mult[c] = std::max(max_mult[c], k);
        }
    }
    auto linear = [](int c) { return IntPolynomial::linear(Integer(1), Integer(c)); };

    WgRationalForm form;
    form.t = t;
    form.denominator = IntPolynomial::constant(Integer(1));
    for (auto [c, k] : max_mult) {
        form.denominator *= linear(c).pow(k);
    }
    std::vector<IntPolynomial> cofactor;
    for (std::size_t l = 0; l < table.irreps.size(); ++l) {
        IntPolynomial p = IntPolynomial::constant(Integer(1));
        for (auto [c, k] : max_mult) {
            int have = mult[l].count(c) ? mult[l].at(c) : 0;
            p *= linear(c).pow(k - have);
        }
        cofactor.push_back(p);
    }
    Integer tfact(factorial(t));
    for (std::size_t k = 0; k < table.classes.size(); ++k) {
        form.classes.push_back(table.classes[k].cycle_type);
        // t! g_c = sum_lambda d_lambda chi_lambda(c) cofactor_lambda
        IntPolynomial acc;
        for (std::size_t l = 0; l < table.irreps.size(); ++l) {
            acc += cofactor[l] * Integer(table.dims[l] * table.chi[l][k]);
        }
        std::vector<Integer> coeffs = acc.coefficients();
        for (auto &v : coeffs) {
            if (v % tfact != 0) {
                throw std::logic_error("wg_rational_form: non-integral numerator");
            }
            v /= tfact;
        }
        form.numerators.emplace_back(coeffs);
    }
    return form;
}

WeingartenNormCertificate weingarten_norm_certificate(int t, const Integer &d) {
    if (t > d) {
        throw std::invalid_argument("weingarten_norm_certificate: requires t <= d");
    }
    const auto &table = character_table(t);
    WeingartenNormCertificate cert;
    Rational smallest;
    bool first = true;
    for (const auto &lambda : table.irreps) {
        Rational c = class_eigenvalue(lambda, Rational(d));
        if (first || c < smallest) {
            smallest = c;
            first = false;
        }
    }
    cert.largest_eigenvalue = 1 / smallest;
    cert.value = cert.largest_eigenvalue.get_d();
    cert.within_e = cert.value <= std::exp(1.0);
    cert.hypothesis_holds = Integer(t) * t <= d;
    return cert;
}

}  // namespace gapcert
