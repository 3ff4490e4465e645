#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace stabletensor {

/// Exact arbitrary-precision integer, used wherever values can leave the
/// 64-bit range (dimensions, orbit-size estimates).
using BigInt = boost::multiprecision::cpp_int;

/// Multiplicities stay in 64-bit arithmetic; any overflow trips the resource
/// bound rather than wrapping.
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("64-bit overflow in multiplicity arithmetic");
  return r;
}

inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("64-bit overflow in multiplicity arithmetic");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("64-bit overflow in multiplicity arithmetic");
  return r;
}

}  // namespace stabletensor
