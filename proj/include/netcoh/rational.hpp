#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace netcoh {

/// Arbitrary-precision integers and rationals.  All generation recursions
/// are carried out exactly in these types; floating point enters only when
/// a final value is handed to callers that want a double.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^e for small nonnegative integer exponents.
inline BigInt ipow(BigInt base, unsigned e) {
  BigInt out = 1;
  while (e > 0) {
    if (e & 1u) out *= base;
    base *= base;
    e >>= 1u;
  }
  return out;
}

inline Rational rpow(Rational base, unsigned e) {
  Rational out = 1;
  while (e > 0) {
    if (e & 1u) out *= base;
    base *= base;
    e >>= 1u;
  }
  return out;
}

/// Canonical "numerator/denominator" rendering ("9/4", "-17/1").
inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace netcoh
