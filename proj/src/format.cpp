#include "gapcert/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace gapcert {

Rational rational_pow(const Rational &base, int exponent) {
    Rational r(1);
    Rational b = exponent >= 0 ? base : Rational(1) / base;
    for (int i = 0; i < std::abs(exponent); ++i) {
        r *= b;
    }
    return r;
}

Integer integer_pow(long base, unsigned exponent) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(base)), exponent);
    if (base < 0 && exponent % 2 == 1) {
        r = -r;
    }
    return r;
}

std::string rational_string(const Rational &r) {
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string polynomial_string(const IntPolynomial &p, const std::string &var) {
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    for (int i = 0; i <= p.degree(); ++i) {
        Integer c = p.coefficient(i);
        if (c == 0) {
            continue;
        }
        Integer mag = abs(c);
        if (s.empty()) {
            s += c < 0 ? "-" : "";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (i == 0 || mag != 1) {
            s += mag.get_str();
        }
        if (i >= 1) {
            s += var;
        }
        if (i >= 2) {
            s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) {
        throw std::runtime_error("format_double failed");
    }
    return std::string(buf, res.ptr);
}

Rational rationalize(double x, const Integer &max_den) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("rationalize: non-finite input");
    }
    // Exact binary value of x, then its convergents.
    Rational exact(x);
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rem = exact;
    for (int iter = 0; iter < 200; ++iter) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational frac = rem - a;
        if (frac == 0) {
            break;
        }
        rem = 1 / frac;
    }
    if (q1 == 0) {
        return Rational(p1);
    }
    Rational r(p1, q1);
    r.canonicalize();
    return r;
}

std::vector<Rational> convergents(double x, const Integer &max_den) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("convergents: non-finite input");
    }
    std::vector<Rational> out;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rem(x);
    for (int iter = 0; iter < 200; ++iter) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational c(p1, q1);
        c.canonicalize();
        out.push_back(c);
        Rational frac = rem - a;
        if (frac == 0) {
            break;
        }
        rem = 1 / frac;
    }
    return out;
}

}  // namespace gapcert
