#pragma once

#include "gapcert/polynomial.hpp"

namespace gapcert {

// d_t(x) = sum over derangements sigma and all tau of x^{|sigma^{-1} tau| + |tau|}.
IntPolynomial dt_bruteforce(int t);
// Inclusion-exclusion product form, valid for any t <= 64.
IntPolynomial dt_productform(int t);
// c_t(x) = sum_tau x^{|tau|} = prod_{l=1}^t (1 + (l-1) x).
IntPolynomial length_generating_function(int t);

// Published uniform constant for 7 <= t <= 28; the maximum of t^2 d_t(t^-2) there is
// 0.0496067 at t = 7, so bounds use the rounded-up kDtNumericalConstantUpper.
inline constexpr double kDtNumericalConstant = 0.0496;
inline constexpr double kDtNumericalConstantUpper = 0.04961;

struct DtAtInverseSquare {
    Rational value;         // d_t(t^-2)
    Rational scaled;        // t^2 d_t(t^-2)
    double value_double = 0.0;
    double scaled_double = 0.0;
};

DtAtInverseSquare dt_at_inverse_tsquared(int t);

// sqrt(d_t(q^-2)), the Frobenius bound on the deranged D(Q2) C(Q1) factor.
double dc_frobenius_bound(int t, int q);
// Actual Frobenius norm of D(Q2) C(Q1) restricted to deranged columns, from the materialized group data (t <= 8).
double dc_restricted_frobenius(int t, double Q1, double Q2);

// (t^2/2) e^{1/(2t^2)} [(1/2 + 3/t)^t + (4/sqrt t)^t] (t/q)^{t-2} / q^2
double dt_analytic_bound(int t, int q);
// The q-free coefficient (t^2/2) e^{1/(2t^2)} [(1/2 + 3/t)^t + (4/sqrt t)^t].
double dt_analytic_coefficient(int t);

enum class DtRegime { numerical, analytic };

// e^2 times the d_t bound of the given regime: the resulting bound on the deranged K norm.
double k_bound_from_dt(int t, int q, DtRegime regime);

}  // namespace gapcert
