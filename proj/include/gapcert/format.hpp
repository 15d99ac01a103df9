#pragma once

#include <string>
#include <vector>

#include "gapcert/polynomial.hpp"

namespace gapcert {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

// Continued-fraction best approximation of x with denominator at most max_den.
Rational rationalize(double x, const Integer &max_den);
// All continued-fraction convergents of x with denominator at most max_den, in order.
std::vector<Rational> convergents(double x, const Integer &max_den);

}  // namespace gapcert
