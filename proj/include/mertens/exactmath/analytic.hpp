// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace mertens {

inline constexpr double euler_gamma() { return std::numbers::egamma_v<double>; }

/// Compensated (Kahan-Babuska) accumulator.
class KahanSum {
public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  KahanSum &operator+=(long double v) {
    add(v);
    return *this;
  }
  long double value() const { return sum_ + comp_; }

private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

/// Offset logarithmic integral Li(x) = int_2^x dt / log t.
///
/// Integrated in u = log t (integrand e^u / u, smooth on [log 2, log x]) with
/// adaptive 61-point Gauss-Kronrod.
inline double li(double x) {
  if (!(x >= 2.0))
    throw ValidationError("li: x must be >= 2, got " + std::to_string(x));
  if (x == 2.0)
    return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  auto f = [](double u) { return std::exp(u) / u; };
  double err = 0.0;
  return gauss_kronrod<double, 61>::integrate(f, std::log(2.0), std::log(x), 30, 1e-14, &err);
}

} // namespace mertens
