#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace conekit {

// Exact rational coefficients. All ring arithmetic is carried out in this
// type; conversion to double happens only at evaluation and solver
// boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Exact conversion: the binary value of x becomes a dyadic rational.
// No rounding is introduced, so certificate verification sees precisely
// the matrix the solver produced.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("cannot convert non-finite value to rational");
  }
  return Rational(x);
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace conekit
