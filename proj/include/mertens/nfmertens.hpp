// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"
#include "mertens/exactmath/analytic.hpp"
#include "mertens/exactmath/bigrational.hpp"
#include "mertens/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace mertens {

/// sum_{q<=x} Phi_q log(q/(q-1)) over the whole table.
inline long double mertens_sum(const PlaceTable &table) {
  KahanSum s;
  for (const auto &e : table.counts)
    s += -static_cast<long double>(e.count) * std::log1p(-1.0L / static_cast<long double>(e.q));
  return s.value();
}

/// C(x) = sum_{NP<=x} 1/NP.
inline long double prime_reciprocal_sum(const PlaceTable &table) {
  KahanSum s;
  for (const auto &e : table.counts)
    s += static_cast<long double>(e.count) / static_cast<long double>(e.q);
  return s.value();
}

/// prod_{NP<=x} (1 - 1/NP), exactly.
inline BigRational mertens_product_exact(const PlaceTable &table) {
  BigInt num = 1, den = 1;
  for (const auto &e : table.counts) {
    for (std::uint32_t i = 0; i < e.count; ++i) {
      num *= BigInt(e.q - 1);
      den *= BigInt(e.q);
    }
  }
  return BigRational(num, den);
}

struct MertensConstant {
  long double B_estimate = 0;
  long double tail_bound = 0;
};

/// B = sum_P {log(1 - 1/NP) + 1/NP} + gamma + log kappa, truncated at NP <= x.
/// The tail is at most sum_{NP>x} 1/NP^2 <= n sum_{m>x} 1/m^2 < n/x.
inline MertensConstant mertens_constant_B(const PlaceTable &table, double kappa) {
  if (table.bound < 100)
    throw ValidationError("mertens_constant_B: truncation must be >= 100");
  KahanSum s;
  for (const auto &e : table.counts) {
    const long double u = 1.0L / static_cast<long double>(e.q);
    s += static_cast<long double>(e.count) * (std::log1p(-u) + u);
  }
  s += euler_gamma();
  s += std::log(static_cast<long double>(kappa));
  return {s.value(), static_cast<long double>(table.field.degree) / static_cast<long double>(table.bound)};
}

inline MertensConstant mertens_constant_B(const QuadField &field, std::uint64_t x) {
  return mertens_constant_B(place_table(field, x), residue_kappa(field));
}

/// Effective constants whose values are unknown; all default to 1.
struct MertensConstants {
  double c = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  double c4 = 1.0;
  double c5 = 1.0;
};

struct ConditionGate {
  double c2 = 1.0;
  double c3 = 1.0;
  double c5 = 1.0;
  int n = 1;
  double g = 0.0;
};

struct ConditionResult {
  bool C1 = false;
  bool C2 = false;
  std::optional<bool> C3; ///< empty when g <= 0
  double C1_threshold = 0;
  double C2_threshold = 0;
  std::optional<double> C3_threshold;
  /// Lemma C2 via its proof: sqrt(log x) >= 16c (c <= e) or 32c log c (c > e), c = sqrt(n)/c2.
  bool C2_proof = false;
  double C2_proof_y = 0;
};

inline double c2_proof_threshold(int n, double c2) {
  const double c = std::sqrt(static_cast<double>(n)) / c2;
  return c <= std::numbers::e ? 16.0 * c : 32.0 * c * std::log(c);
}

/// All three conditions; C3 is left empty when g <= 0.
inline ConditionResult evaluate_conditions(const ConditionGate &gate, double log_x) {
  if (gate.n < 1 || !(gate.c2 > 0) || !(gate.c3 > 0) || !(gate.c5 > 0))
    throw ValidationError("condition_gate: n >= 1 and positive constants required");
  ConditionResult r;
  const double n = gate.n, g = gate.g;
  r.C1_threshold = gate.c3 * n * g * g;
  r.C1 = log_x >= r.C1_threshold;
  const double l = std::log(std::sqrt(n) / gate.c2);
  r.C2_threshold = 32.0 * 32.0 / (gate.c2 * gate.c2) * n * l * l;
  r.C2 = log_x >= r.C2_threshold;
  r.C2_proof_y = c2_proof_threshold(gate.n, gate.c2);
  r.C2_proof = std::sqrt(log_x) >= r.C2_proof_y;
  if (g > 0) {
    r.C3_threshold = gate.c5 * g * std::log(2.0 * g) * std::log(std::log(12.0 * g));
    r.C3 = log_x >= *r.C3_threshold;
  }
  return r;
}

/// Strict form: rejects g <= 0, where C3 is undefined.
inline ConditionResult condition_gate(const ConditionGate &gate, double x) {
  if (!(x >= 3))
    throw ValidationError("condition_gate: x must be >= 3");
  if (!(gate.g > 0))
    throw ValidationError("condition_gate: C3 needs genus g > 0");
  return evaluate_conditions(gate, std::log(x));
}

struct LemmaC2Check {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// exp(-c2 n^{-1/2} sqrt(log x)) <= (log x)^{-2}, given log x directly.
inline LemmaC2Check lemma_c2_check_log(int n, double c2, double log_x) {
  if (n < 1 || !(c2 > 0) || !(log_x > 0))
    throw ValidationError("lemma_c2_check: need n >= 1, c2 > 0, x > 1");
  LemmaC2Check r;
  r.lhs = std::exp(-c2 / std::sqrt(static_cast<double>(n)) * std::sqrt(log_x));
  r.rhs = 1.0 / (log_x * log_x);
  r.holds = r.lhs <= r.rhs;
  return r;
}

inline LemmaC2Check lemma_c2_check(int n, double c2, double x) {
  if (!(x > 1))
    throw ValidationError("lemma_c2_check: x must be > 1");
  return lemma_c2_check_log(n, c2, std::log(x));
}

struct MertensReport {
  std::string field;
  std::uint64_t x = 0;
  long double sum_log = 0;
  long double sum_recip = 0;
  long double main_term = 0;
  long double error = 0;
  double grh_bound_shape = 0;   ///< (n log x + g)/sqrt(x)
  double normalized_error = 0;  ///< |error| sqrt(x) / (6g + 3n log x + 4n)
  double normalized_error_2n = 0; ///< same with +2n
  double grh_eps_bound = 0;     ///< c x^{-1/2} (6g + 3n log x + 4n)
  std::optional<double> rho_bound;
  ConditionResult conditions;
};

/// Non-GRH branch with a user-supplied exceptional zero rho in [0, 1):
/// c4 (1/(rho log x)) (1 + 1/(1-rho)) + 2 c1 / log x.
inline double rho_branch_bound(double rho, double x, const MertensConstants &k) {
  if (!(rho >= 0 && rho < 1))
    throw ValidationError("rho must lie in [0, 1)");
  const double lx = std::log(x);
  return k.c4 * (1.0 / (rho * lx)) * (1.0 + 1.0 / (1.0 - rho)) + 2.0 * k.c1 / lx;
}

struct MertensOptions {
  MertensConstants constants;
  std::optional<double> rho;
};

namespace detail {

inline MertensReport make_report(const QuadField &field, std::uint64_t x, long double sum_log, long double sum_recip,
                                 double kappa, const MertensOptions &opt) {
  MertensReport r;
  r.field = field.label();
  r.x = x;
  r.sum_log = sum_log;
  r.sum_recip = sum_recip;
  const long double lx = std::log(static_cast<long double>(x));
  r.main_term = std::log(lx) + euler_gamma() + std::log(static_cast<long double>(kappa));
  r.error = sum_log - r.main_term;
  const double n = field.degree, g = field.genus, ld = static_cast<double>(lx), sx = std::sqrt(static_cast<double>(x));
  r.grh_bound_shape = (n * ld + g) / sx;
  const double ae = std::fabs(static_cast<double>(r.error));
  r.normalized_error = ae * sx / (6 * g + 3 * n * ld + 4 * n);
  r.normalized_error_2n = ae * sx / (6 * g + 3 * n * ld + 2 * n);
  r.grh_eps_bound = opt.constants.c / sx * (6 * g + 3 * n * ld + 4 * n);
  if (opt.rho)
    r.rho_bound = rho_branch_bound(*opt.rho, static_cast<double>(x), opt.constants);
  ConditionGate gate{opt.constants.c2, opt.constants.c3, opt.constants.c5, field.degree, g};
  r.conditions = evaluate_conditions(gate, ld);
  return r;
}

} // namespace detail

/// Reports at every x in xs from a single place table built up to max(xs).
/// kappa defaults to residue_kappa(field).
inline std::vector<MertensReport> mertens_sweep(const QuadField &field, std::vector<std::uint64_t> xs,
                                                const MertensOptions &opt = {}, std::optional<double> kappa_in = {}) {
  if (xs.empty())
    return {};
  std::sort(xs.begin(), xs.end());
  for (auto x : xs)
    if (x < 2)
      throw ValidationError("mertens_error: x must be >= 2");
  const PlaceTable table = place_table(field, xs.back());
  const double kappa = kappa_in ? *kappa_in : residue_kappa(field);
  std::vector<MertensReport> out;
  KahanSum sl, sr;
  std::size_t i = 0;
  for (auto x : xs) {
    for (; i < table.counts.size() && table.counts[i].q <= x; ++i) {
      const auto &e = table.counts[i];
      const long double q = static_cast<long double>(e.q);
      sl += -static_cast<long double>(e.count) * std::log1p(-1.0L / q);
      sr += static_cast<long double>(e.count) / q;
    }
    out.push_back(detail::make_report(field, x, sl.value(), sr.value(), kappa, opt));
  }
  return out;
}

inline MertensReport mertens_error(const QuadField &field, std::uint64_t x, const MertensOptions &opt = {}) {
  return mertens_sweep(field, {x}, opt).front();
}

/// GRH bound on D(x): 1/(x log x) + (10g + 3n log x)/(3 x sqrt x) + 2n/x.
inline double prime_square_tail_bound(int n, double g, double x) {
  const double lx = std::log(x);
  return 1.0 / (x * lx) + (10.0 * g + 3.0 * n * lx) / (3.0 * x * std::sqrt(x)) + 2.0 * n / x;
}

struct PrimeSquareTail {
  long double partial = 0;   ///< sum_{x < NP <= X} 1/NP^2
  long double remainder = 0; ///< estimate of sum_{NP > X} 1/NP^2, at most n/X
  long double value = 0;
  bool warning = false; ///< remainder > 10% of partial
  double grh_bound = 0;
};

inline PrimeSquareTail prime_square_tail(const PlaceTable &table, std::uint64_t x) {
  if (x > table.bound)
    throw ValidationError("prime_square_tail: x must not exceed the cutoff");
  PrimeSquareTail r;
  KahanSum s;
  for (const auto &e : table.counts)
    if (e.q > x) {
      const long double q = static_cast<long double>(e.q);
      s += static_cast<long double>(e.count) / (q * q);
    }
  r.partial = s.value();
  r.remainder = static_cast<long double>(table.field.degree) / static_cast<long double>(table.bound);
  r.value = r.partial + r.remainder;
  r.warning = r.remainder > 0.1L * r.partial;
  r.grh_bound = prime_square_tail_bound(table.field.degree, table.field.genus, static_cast<double>(x));
  return r;
}

inline PrimeSquareTail prime_square_tail(const QuadField &field, std::uint64_t x, std::uint64_t cutoff) {
  if (x > cutoff || x < 2)
    throw ValidationError("prime_square_tail: need 2 <= x <= cutoff");
  return prime_square_tail(place_table(field, cutoff), x);
}

struct PiAudit {
  std::uint64_t pi_x = 0;
  double li_x = 0;
  double delta = 0;
  double grh_bound_shape = 0; ///< sqrt(x) (2g + n log x)
};

inline PiAudit pi_audit(const PlaceTable &table, std::uint64_t x) {
  if (x < 2 || x > table.bound)
    throw ValidationError("pi_audit: need 2 <= x <= table bound");
  PiAudit r;
  r.pi_x = table.places_up_to(x);
  r.li_x = li(static_cast<double>(x));
  r.delta = static_cast<double>(r.pi_x) - r.li_x;
  const double xd = static_cast<double>(x);
  r.grh_bound_shape = std::sqrt(xd) * (2.0 * table.field.genus + table.field.degree * std::log(xd));
  return r;
}

inline PiAudit pi_audit(const QuadField &field, std::uint64_t x) {
  if (x < 2)
    throw ValidationError("pi_audit: x must be >= 2");
  return pi_audit(place_table(field, x), x);
}

} // namespace mertens
