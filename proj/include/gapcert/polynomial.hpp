#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

namespace gapcert {

using Integer = mpz_class;
using Rational = mpq_class;

Rational rational_pow(const Rational &base, int exponent);
Integer integer_pow(long base, unsigned exponent);
// "p/q" in lowest terms; q is always written, including "/1".
std::string rational_string(const Rational &r);

// Dense univariate polynomial, coefficient i multiplies x^i.
template <class Coef>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Coef> coefficients) : c_(std::move(coefficients)) { trim(); }
    static Polynomial constant(const Coef &v) { return Polynomial(std::vector<Coef>{v}); }
    static Polynomial monomial(const Coef &v, int degree) {
        std::vector<Coef> c(static_cast<std::size_t>(degree) + 1, Coef(0));
        c.back() = v;
        return Polynomial(c);
    }
    // a + b x
    static Polynomial linear(const Coef &a, const Coef &b) { return Polynomial(std::vector<Coef>{a, b}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Coef> &coefficients() const { return c_; }
    Coef coefficient(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Coef(0); }
    int lowest_degree() const {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != 0) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }

    template <class Value>
    Value evaluate(const Value &x) const {
        Value r(0);
        for (std::size_t i = c_.size(); i-- > 0;) {
            if constexpr (std::is_same_v<Value, double>) {
                r = r * x + c_[i].get_d();
            } else {
                r = r * x + Value(c_[i]);
            }
        }
        return r;
    }

    Polynomial &operator+=(const Polynomial &o) {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size(), Coef(0));
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        trim();
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o) {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size(), Coef(0));
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        trim();
        return *this;
    }
    Polynomial &operator*=(const Coef &s) {
        for (auto &v : c_) {
            v *= s;
        }
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Coef &s) { return a *= s; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        if (a.is_zero() || b.is_zero()) {
            return Polynomial();
        }
        std::vector<Coef> r(a.c_.size() + b.c_.size() - 1, Coef(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Polynomial(r);
    }
    Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }
    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }

    // Substitute x -> x^k.
    Polynomial compose_power(int k) const {
        if (is_zero()) {
            return Polynomial();
        }
        std::vector<Coef> r(static_cast<std::size_t>(degree()) * k + 1, Coef(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            r[i * k] = c_[i];
        }
        return Polynomial(r);
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(Coef(1));
        for (unsigned i = 0; i < e; ++i) {
            r *= *this;
        }
        return r;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) {
            c_.pop_back();
        }
    }
    std::vector<Coef> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

// Human-readable form such as "1 - 2z^2".
std::string polynomial_string(const IntPolynomial &p, const std::string &var = "z");

}  // namespace gapcert
