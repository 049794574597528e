// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace mertens {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational, always in lowest terms with a positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational make_rational(const BigInt &num, const BigInt &den) {
  return BigRational(num, den);
}

inline BigInt ipow(const BigInt &base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline BigInt ipow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

namespace detail {

// Returns (m, e) with |x| ~= m * 2^e and m carrying 64 significant bits.
inline long double scaled(const BigInt &x, long &exponent) {
  using boost::multiprecision::msb;
  if (x == 0) {
    exponent = 0;
    return 0.0L;
  }
  BigInt a = abs(x);
  long bits = static_cast<long>(msb(a)) + 1;
  long shift = bits > 64 ? bits - 64 : 0;
  BigInt top = a >> shift;
  long double m = static_cast<long double>(top.convert_to<std::uint64_t>());
  exponent = shift;
  return x < 0 ? -m : m;
}

} // namespace detail

/// Conversion that survives numerators/denominators far beyond the range of
/// long double (Mertens products over thousands of primes).
inline long double to_long_double(const BigRational &q) {
  long en = 0, ed = 0;
  long double n = detail::scaled(numerator(q), en);
  long double d = detail::scaled(denominator(q), ed);
  if (n == 0.0L)
    return 0.0L;
  return std::ldexp(n / d, static_cast<int>(en - ed));
}

inline double to_double(const BigRational &q) {
  return static_cast<double>(to_long_double(q));
}

/// Natural log of a positive big integer.
inline long double log_big(const BigInt &x) {
  long e = 0;
  long double m = detail::scaled(x, e);
  return std::log(m) + static_cast<long double>(e) * std::log(2.0L);
}

/// Natural log of a positive rational without overflow.
inline long double log_rational(const BigRational &q) {
  return log_big(numerator(q)) - log_big(denominator(q));
}

inline std::string to_string(const BigRational &q) {
  if (denominator(q) == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace mertens
