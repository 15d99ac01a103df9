#include "gapcert/derangement_poly.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "gapcert/format.hpp"
#include "gapcert/symmetric_group.hpp"

namespace gapcert {

namespace {

int cycles_of_product(const std::uint8_t *a_inv, const std::uint8_t *b, int t) {
    // cycle count of a^{-1} ∘ b
    std::uint8_t img[kMaxDegree];
    for (int i = 0; i < t; ++i) {
        img[i] = a_inv[b[i]];
    }
    unsigned seen = 0;
    int cycles = 0;
    for (int i = 0; i < t; ++i) {
        if (seen & (1u << i)) {
            continue;
        }
        ++cycles;
        int j = i;
        while (!(seen & (1u << j))) {
            seen |= 1u << j;
            j = img[j];
        }
    }
    return cycles;
}

IntPolynomial shifted_linear_square(int l) {
    // (1 + (l-1) x)^2
    auto p = IntPolynomial::linear(Integer(1), Integer(l - 1));
    return p * p;
}

}  // namespace

IntPolynomial dt_bruteforce(int t) {
    if (t < 1 || t > kMaxEnumerationDegree) {
        throw std::invalid_argument("dt_bruteforce: supported for 1 <= t <= 8");
    }
    const auto &group = symmetric_group(t);
    std::size_t n = group.order();
    std::vector<std::uint8_t> images(n * t);
    std::vector<std::uint8_t> inverse_images(n * t);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < t; ++k) {
            images[i * t + k] = static_cast<std::uint8_t>(group.element(i)[k]);
            inverse_images[i * t + k] = static_cast<std::uint8_t>(group.element(group.inverse(i))[k]);
        }
    }
    // Both lengths are invariant under simultaneous conjugation, so one derangement per
    // cycle type suffices, weighted by the number of derangements of that type.
    std::map<std::vector<int>, std::pair<std::size_t, std::uint64_t>> types;
    for (std::size_t s = 0; s < n; ++s) {
        if (!group.is_derangement(s)) {
            continue;
        }
        auto it = types.try_emplace(group.element(s).cycle_type(), s, 0).first;
        ++it->second.second;
    }
    std::vector<std::uint64_t> counts(2 * t + 1, 0);
    for (const auto &[type, rep] : types) {
        const auto [s, weight] = rep;
        for (std::size_t u = 0; u < n; ++u) {
            int rel = t - cycles_of_product(&inverse_images[s * t], &images[u * t], t);
            counts[rel + group.length(u)] += weight;
        }
    }
    std::vector<Integer> coeffs;
    for (auto c : counts) {
        coeffs.emplace_back(static_cast<unsigned long>(c));
    }
    return IntPolynomial(coeffs);
}

IntPolynomial dt_productform(int t) {
    if (t < 1 || t > 64) {
        throw std::invalid_argument("dt_productform: supported for 1 <= t <= 64");
    }
    IntPolynomial sum;
    Integer binom = 1;
    for (int k = 0; k <= t; ++k) {
        IntPolynomial term = IntPolynomial::constant(binom);
        for (int l = k + 1; l <= t; ++l) {
            term *= IntPolynomial::linear(Integer(1), Integer(0)) +
                    IntPolynomial::monomial(Integer(l - 1), 2);
        }
        for (int l = 1; l <= k; ++l) {
            term *= shifted_linear_square(l);
        }
        if ((t + k) % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * (t - k) / (k + 1);
    }
    return sum;
}

IntPolynomial length_generating_function(int t) {
    IntPolynomial p = IntPolynomial::constant(Integer(1));
    for (int l = 1; l <= t; ++l) {
        p *= IntPolynomial::linear(Integer(1), Integer(l - 1));
    }
    return p;
}

DtAtInverseSquare dt_at_inverse_tsquared(int t) {
    if (t < 2 || t > 64) {
        throw std::invalid_argument("dt_at_inverse_tsquared: supported for 2 <= t <= 64");
    }
    DtAtInverseSquare r;
    Rational x(1, t * t);
    r.value = dt_productform(t).evaluate(x);
    r.scaled = r.value * t * t;
    r.value_double = r.value.get_d();
    r.scaled_double = r.scaled.get_d();
    return r;
}

double dc_frobenius_bound(int t, int q) {
    if (q < 2) {
        throw std::invalid_argument("dc_frobenius_bound: requires q >= 2");
    }
    Rational x(1, q * q);
    return std::sqrt(dt_productform(t).evaluate(x).get_d());
}

double dc_restricted_frobenius(int t, double Q1, double Q2) {
    // [D(Q2) C(Q1)]_{rho tau} = Q2^{-|rho|} Q1^{-|rho^{-1} tau|}, tau deranged
    const auto &group = symmetric_group(t);
    double sum = 0.0;
    for (std::size_t tau = 0; tau < group.order(); ++tau) {
        if (!group.is_derangement(tau)) {
            continue;
        }
        for (std::size_t rho = 0; rho < group.order(); ++rho) {
            double e = std::pow(Q2, -group.length(rho)) * std::pow(Q1, -group.length(group.relative(rho, tau)));
            sum += e * e;
        }
    }
    return std::sqrt(sum);
}

double dt_analytic_coefficient(int t) {
    double tt = t;
    return tt * tt / 2.0 * std::exp(1.0 / (2.0 * tt * tt)) *
           (std::pow(0.5 + 3.0 / tt, tt) + std::pow(4.0 / std::sqrt(tt), tt));
}

double dt_analytic_bound(int t, int q) {
    if (t > q) {
        throw std::invalid_argument("dt_analytic_bound: requires t <= q");
    }
    double ratio = static_cast<double>(t) / q;
    return dt_analytic_coefficient(t) * std::pow(ratio, t - 2) / (static_cast<double>(q) * q);
}

double k_bound_from_dt(int t, int q, DtRegime regime) {
    if (t > q) {
        throw std::invalid_argument("k_bound_from_dt: requires t <= q");
    }
    double e2 = std::exp(2.0);
    double ratio = static_cast<double>(t) / q;
    double q2 = static_cast<double>(q) * q;
    switch (regime) {
        case DtRegime::numerical:
            if (t < 7 || t > 28) {
                throw std::invalid_argument("k_bound_from_dt: numerical regime covers 7 <= t <= 28");
            }
            return e2 * kDtNumericalConstantUpper * std::pow(ratio, t - 2) / q2;
        case DtRegime::analytic:
            if (t <= 28) {
                throw std::invalid_argument("k_bound_from_dt: analytic regime covers t > 28");
            }
            return e2 * dt_analytic_bound(t, q);
    }
    throw std::logic_error("k_bound_from_dt: unknown regime");
}

}  // namespace gapcert
