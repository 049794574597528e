// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mertens/error.hpp"
#include "mertens/nfmertens.hpp"
#include "mertens/parallel.hpp"
#include "mertens/quadfield.hpp"
#include "mertens/weilexplicit.hpp"

namespace mertens {

/// A finite list of quadratic fields, in nondecreasing genus order.
struct NfFamilySpec {
  std::string name = "nf-family";
  std::vector<std::int64_t> discs;
  /// Truncation per member; empty means default_x everywhere, one entry means that value everywhere.
  std::vector<std::uint64_t> x;
  std::uint64_t default_x = 1'000'000;
  ResidueOptions residue;
  unsigned jobs = 1;

  std::uint64_t x_at(std::size_t i) const {
    if (x.empty())
      return default_x;
    return x.size() == 1 ? x.front() : x.at(i);
  }
};

/// Fundamental discriminants D in [a, b] with D < 0, ordered by |D|.
inline std::vector<std::int64_t> imaginary_quadratic_discriminants(std::int64_t a, std::int64_t b) {
  detail::require(a <= b && b < 0, "imaginary_quadratic_discriminants: need a <= b < 0");
  std::vector<std::int64_t> out;
  for (std::int64_t D = b; D >= a; --D)
    if (is_fundamental_discriminant(D))
      out.push_back(D);
  return out;
}

/// Fundamental discriminants D in [a, b] with D > 1, ascending.
inline std::vector<std::int64_t> real_quadratic_discriminants(std::int64_t a, std::int64_t b) {
  detail::require(a <= b && b > 1, "real_quadratic_discriminants: need a <= b, b > 1");
  std::vector<std::int64_t> out;
  for (std::int64_t D = std::max<std::int64_t>(a, 2); D <= b; ++D)
    if (is_fundamental_discriminant(D))
      out.push_back(D);
  return out;
}

/// Varieties over a common F_r of common dimension d, nondecreasing b_X.
struct CurveFamilySpec {
  std::string name = "curve-family";
  std::vector<WeilData> members;
  /// Truncation per member; empty means min(M_i, 12).
  std::vector<std::size_t> N;
  unsigned jobs = 1;

  std::size_t N_at(std::size_t i) const {
    if (N.empty())
      return std::min<std::size_t>(members.at(i).M(), 12);
    return N.size() == 1 ? N.front() : N.at(i);
  }
};

/// One report row.  "size" is g for number fields and b_X for varieties;
/// "truncation" is x or N.  Numeric columns are NaN when status != "ok".
struct FamilyRow {
  std::string id;
  double size = 0;
  int degree = 0;
  std::uint64_t truncation = 0;
  double log_kappa_over_size = 0;
  double truncated = 0;      ///< sum Phi_q/size log(q/(q-1))
  double gap = 0;            ///< truncated - log kappa / size
  double error_over_size = 0; ///< Mertens error / size
  double ebs_shape = 0;      ///< log x / sqrt x, or r^{-N/2}/N
  double normalized_gap = 0; ///< gap / ebs_shape
  double running_max = 0;    ///< max of log kappa / size over members so far
  bool ibs_ok = false;       ///< running_max <= truncated + |error| / size
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct FamilyReport {
  std::string name;
  std::string kind; ///< "nf" or "curve"
  std::vector<FamilyRow> rows;
};

namespace detail {

inline FamilyRow failed_row(std::string id, std::uint64_t trunc, const std::string &why) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  FamilyRow r;
  r.id = std::move(id);
  r.truncation = trunc;
  r.size = r.log_kappa_over_size = r.truncated = r.gap = r.error_over_size = r.ebs_shape = r.normalized_gap =
      r.running_max = nan;
  r.status = why;
  return r;
}

inline void finish_running_max(std::vector<FamilyRow> &rows) {
  double best = -std::numeric_limits<double>::infinity();
  for (auto &r : rows) {
    if (!r.ok())
      continue;
    best = std::max(best, r.log_kappa_over_size);
    r.running_max = best;
    r.ibs_ok = best <= r.truncated + std::fabs(r.error_over_size) + 1e-12;
  }
}

} // namespace detail

inline void validate_family(const NfFamilySpec &spec) {
  detail::require(!spec.discs.empty(), "nf family: no members");
  detail::require(spec.x.size() <= 1 || spec.x.size() == spec.discs.size(),
                  "nf family: x schedule length must be 0, 1 or the member count");
  double prev = 0;
  for (auto D : spec.discs) {
    const auto k = QuadField::from_discriminant(D);
    detail::require(k.genus >= prev - 1e-15, "nf family: genus must be nondecreasing (" + std::to_string(D) + ")");
    prev = k.genus;
  }
}

inline void validate_family(const CurveFamilySpec &spec) {
  detail::require(!spec.members.empty(), "curve family: no members");
  detail::require(spec.N.size() <= 1 || spec.N.size() == spec.members.size(),
                  "curve family: N schedule length must be 0, 1 or the member count");
  const auto &first = spec.members.front();
  std::uint64_t prev = 0;
  for (const auto &w : spec.members) {
    validate_weil(w);
    detail::require(w.r == first.r && w.d == first.d, "curve family: members must share r and d (" + w.name + ")");
    detail::require(w.b_X() >= prev, "curve family: b_X must be nondecreasing (" + w.name + ")");
    prev = w.b_X();
  }
}

/// Per member: g, log kappa / g, the place-weighted Mertens sum / g at x(i),
/// and the gap between them.  Budget failures are recorded in the row.
inline FamilyReport scan_nf_family(const NfFamilySpec &spec) {
  validate_family(spec);
  FamilyReport rep{spec.name, "nf", std::vector<FamilyRow>(spec.discs.size())};
  parallel_for(spec.discs.size(), spec.jobs, [&](std::size_t i) {
    const auto field = QuadField::from_discriminant(spec.discs[i]);
    const std::uint64_t x = spec.x_at(i);
    try {
      const double kappa = residue_kappa(field, spec.residue);
      const auto m = mertens_sweep(field, {x}, {}, kappa).front();
      const double g = field.genus;
      FamilyRow r;
      r.id = field.label();
      r.size = g;
      r.degree = field.degree;
      r.truncation = x;
      r.log_kappa_over_size = std::log(kappa) / g;
      r.truncated = static_cast<double>(m.sum_log) / g;
      r.gap = r.truncated - r.log_kappa_over_size;
      r.error_over_size = static_cast<double>(m.error) / g;
      const double lx = std::log(static_cast<double>(x));
      r.ebs_shape = lx / std::sqrt(static_cast<double>(x));
      r.normalized_gap = r.gap / r.ebs_shape;
      rep.rows[i] = std::move(r);
    } catch (const BudgetError &e) {
      rep.rows[i] = detail::failed_row(field.label(), x, std::string("budget: ") + e.what());
    }
  });
  detail::finish_running_max(rep.rows);
  return rep;
}

/// Per member: b_X, log kappa_X / b_X from the counts, the closed-point
/// weighted sum / b_X up to N(i), and the gap.  Short count lists are
/// recorded in the row.
inline FamilyReport scan_curve_family(const CurveFamilySpec &spec) {
  validate_family(spec);
  FamilyReport rep{spec.name, "curve", std::vector<FamilyRow>(spec.members.size())};
  parallel_for(spec.members.size(), spec.jobs, [&](std::size_t i) {
    const auto &w = spec.members[i];
    const std::size_t N = spec.N_at(i);
    try {
      if (N < 1 || N > w.M())
        throw InsufficientCounts("need N(i) = " + std::to_string(N) + " counts, have " + std::to_string(w.M()));
      const auto res = residue_from_counts(w);
      const long double lkl = res.completed ? res.completed_log_kappa_log_r : res.log_kappa_log_r;
      const auto phi = closed_points(w);
      const auto v = variety_mertens(w, N, phi, lkl);
      const double b = static_cast<double>(w.b_X());
      const double log_r = std::log(static_cast<double>(w.r));
      FamilyRow r;
      r.id = w.name;
      r.size = b;
      r.degree = 0;
      r.truncation = N;
      r.log_kappa_over_size = static_cast<double>(lkl - std::log(static_cast<long double>(log_r))) / b;
      r.truncated = static_cast<double>(v.sum) / b;
      r.gap = r.truncated - r.log_kappa_over_size;
      r.error_over_size = static_cast<double>(v.error) / b;
      r.ebs_shape = std::pow(static_cast<double>(w.r), -0.5 * static_cast<double>(N)) / static_cast<double>(N);
      r.normalized_gap = r.gap / r.ebs_shape;
      rep.rows[i] = std::move(r);
    } catch (const BudgetError &e) {
      rep.rows[i] = detail::failed_row(w.name, N, std::string("insufficient counts: ") + e.what());
    }
  });
  detail::finish_running_max(rep.rows);
  return rep;
}

/// Phi_q / size along the family; no limit is asserted.
struct PhiLimit {
  std::vector<double> values;
  double tail_spread = 0; ///< max - min over the last quartile (at least one value)
};

namespace detail {
inline PhiLimit phi_limit_from(std::vector<double> v) {
  PhiLimit out{std::move(v)};
  if (out.values.empty())
    return out;
  const std::size_t n = out.values.size();
  const std::size_t start = n - std::max<std::size_t>(1, n / 4);
  const auto [lo, hi] = std::minmax_element(out.values.begin() + static_cast<std::ptrdiff_t>(start), out.values.end());
  out.tail_spread = *hi - *lo;
  return out;
}
} // namespace detail

/// Phi_q(K_i) / g_i for a prime power q.
inline PhiLimit phi_limit_estimate(const NfFamilySpec &spec, std::uint64_t q) {
  validate_family(spec);
  detail::require(q >= 2, "phi_limit_estimate: q >= 2");
  std::vector<double> v(spec.discs.size());
  parallel_for(spec.discs.size(), spec.jobs, [&](std::size_t i) {
    const auto field = QuadField::from_discriminant(spec.discs[i]);
    v[i] = static_cast<double>(place_table(field, q).phi(q)) / field.genus;
  });
  return detail::phi_limit_from(std::move(v));
}

/// Phi_{r^m}(X_i) / b_{X_i}.
inline PhiLimit phi_limit_estimate(const CurveFamilySpec &spec, std::size_t m) {
  validate_family(spec);
  detail::require(m >= 1, "phi_limit_estimate: m >= 1");
  std::vector<double> v;
  for (const auto &w : spec.members) {
    if (m > w.M())
      throw InsufficientCounts("phi_limit_estimate: " + w.name + " has " + std::to_string(w.M()) + " counts");
    const auto phi = closed_points(w);
    v.push_back(to_long_double(BigRational(phi[m - 1])) / static_cast<double>(w.b_X()));
  }
  return detail::phi_limit_from(std::move(v));
}

} // namespace mertens
