// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"
#include "mertens/exactmath/analytic.hpp"
#include "mertens/exactmath/bigrational.hpp"
#include "mertens/exactmath/kronecker.hpp"
#include "mertens/exactmath/prime_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mertens {

inline bool is_squarefree(std::int64_t m) {
  m = std::llabs(m);
  if (m == 0)
    return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0)
      return false;
    if (m % p == 0)
      m /= p;
  }
  return true;
}

/// D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree; D != 1.
inline bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 0 || D == 1)
    return false;
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1)
    return is_squarefree(D);
  if (r != 0)
    return false;
  const std::int64_t m = D / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

/// Q or a quadratic field, identified by its fundamental discriminant.
struct QuadField {
  std::int64_t disc = 1; ///< 1 stands for Q
  int degree = 1;
  double genus = 0.0; ///< log sqrt|D|
  int r1 = 1;
  int r2 = 0;
  int roots_of_unity = 2;

  static QuadField rational() { return QuadField{}; }

  static QuadField from_discriminant(std::int64_t D) {
    if (!is_fundamental_discriminant(D))
      throw ValidationError("QuadField: " + std::to_string(D) + " is not a fundamental discriminant");
    QuadField k;
    k.disc = D;
    k.degree = 2;
    k.genus = 0.5 * std::log(std::fabs(static_cast<double>(D)));
    k.r1 = D > 0 ? 2 : 0;
    k.r2 = D > 0 ? 0 : 1;
    k.roots_of_unity = D == -4 ? 4 : (D == -3 ? 6 : 2);
    return k;
  }

  /// "Q" or a decimal fundamental discriminant.
  static QuadField parse(const std::string &token) {
    if (token == "Q" || token == "q")
      return rational();
    std::size_t pos = 0;
    long long D = 0;
    try {
      D = std::stoll(token, &pos);
    } catch (const std::exception &) {
      throw ValidationError("field token '" + token + "' is neither Q nor an integer discriminant");
    }
    if (pos != token.size())
      throw ValidationError("field token '" + token + "' has trailing characters");
    return from_discriminant(D);
  }

  bool is_rational() const noexcept { return degree == 1; }

  std::string label() const { return is_rational() ? "Q" : std::to_string(disc); }
};

enum class Splitting { Split, Inert, Ramified };

inline Splitting splitting_type(const QuadField &field, std::uint64_t p) {
  if (field.is_rational())
    throw ValidationError("splitting_type: field has degree 1");
  switch (kronecker(field.disc, static_cast<std::int64_t>(p))) {
  case 1:
    return Splitting::Split;
  case -1:
    return Splitting::Inert;
  default:
    return Splitting::Ramified;
  }
}

struct PlaceCount {
  std::uint64_t q;
  std::uint32_t count;
};

/// Phi_q for every prime power q <= bound (zero entries omitted, sorted by q).
struct PlaceTable {
  QuadField field;
  std::uint64_t bound = 0;
  std::vector<PlaceCount> counts;

  std::uint32_t phi(std::uint64_t q) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), q,
                               [](const PlaceCount &a, std::uint64_t v) { return a.q < v; });
    return (it != counts.end() && it->q == q) ? it->count : 0;
  }

  /// pi(x): number of places with norm <= x.
  std::uint64_t places_up_to(std::uint64_t x) const {
    std::uint64_t total = 0;
    for (const auto &e : counts) {
      if (e.q > x)
        break;
      total += e.count;
    }
    return total;
  }

  /// Entries with q <= x.
  PlaceTable restricted(std::uint64_t x) const {
    PlaceTable t{field, std::min(x, bound), {}};
    for (const auto &e : counts)
      if (e.q <= x)
        t.counts.push_back(e);
    return t;
  }
};

inline PlaceTable place_table(const QuadField &field, std::uint64_t x) {
  if (x < 2)
    throw ValidationError("place_table: bound must be >= 2");
  PlaceTable t{field, x, {}};
  std::vector<PlaceCount> inert;
  for_each_prime(x, [&](std::uint64_t p) {
    if (field.is_rational()) {
      t.counts.push_back({p, 1});
      return;
    }
    switch (splitting_type(field, p)) {
    case Splitting::Split:
      t.counts.push_back({p, 2});
      break;
    case Splitting::Ramified:
      t.counts.push_back({p, 1});
      break;
    case Splitting::Inert:
      if (p <= x / p)
        inert.push_back({p * p, 1});
      break;
    }
  });
  if (!inert.empty()) {
    std::vector<PlaceCount> merged;
    merged.reserve(t.counts.size() + inert.size());
    std::merge(t.counts.begin(), t.counts.end(), inert.begin(), inert.end(), std::back_inserter(merged),
               [](const PlaceCount &a, const PlaceCount &b) { return a.q < b.q; });
    t.counts = std::move(merged);
  }
  return t;
}

/// Values chi_D(a) for 0 <= a < |D|, built multiplicatively from chi at primes.
inline std::vector<std::int8_t> character_table(std::int64_t D) {
  const auto n = static_cast<std::uint32_t>(std::llabs(D));
  std::vector<std::int8_t> chi(n, 0);
  if (n < 2)
    return chi;
  chi[1] = 1;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> spf(n, 0);
  for (std::uint32_t i = 2; i < n; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      primes.push_back(i);
      chi[i] = static_cast<std::int8_t>(kronecker(D, i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = std::uint64_t(p) * i;
      if (p > spf[i] || m >= n)
        break;
      spf[m] = p;
      chi[m] = static_cast<std::int8_t>(chi[p] * chi[i]);
    }
  }
  return chi;
}

struct ResidueOptions {
  std::int64_t max_abs_disc = 1'000'000;
};

/// kappa_K = Res_{s=1} zeta_K = L(1, chi_D), from the finite closed forms.
inline double residue_kappa(const QuadField &field, const ResidueOptions &opt = {}) {
  if (field.is_rational())
    return 1.0;
  const std::int64_t D = field.disc;
  if (!is_fundamental_discriminant(D))
    throw ValidationError("residue_kappa: non-fundamental discriminant");
  if (std::llabs(D) > opt.max_abs_disc)
    throw BudgetError("residue_kappa: |D| = " + std::to_string(std::llabs(D)) + " above configured cap");
  const auto chi = character_table(D);
  const auto n = static_cast<std::int64_t>(chi.size());
  constexpr long double pi = std::numbers::pi_v<long double>;
  long double kappa = 0.0L;
  if (D < 0) {
    std::int64_t s = 0; // exact: |s| < |D|^2
    for (std::int64_t a = 1; a < n; ++a)
      s += chi[a] * a;
    kappa = -pi * static_cast<long double>(s) / std::pow(static_cast<long double>(n), 1.5L);
  } else {
    KahanSum s;
    for (std::int64_t a = 1; a < n; ++a)
      if (chi[a])
        s += chi[a] * std::log(std::sin(pi * a / n));
    kappa = -s.value() / std::sqrt(static_cast<long double>(n));
  }
  if (!(kappa > 0))
    throw ValidationError("residue_kappa: non-positive residue for D = " + std::to_string(D));
  return static_cast<double>(kappa);
}

/// Number of reduced primitive forms (a, b, c), b^2 - 4ac = D < 0.
inline std::int64_t class_number_imag(std::int64_t D) {
  if (D >= 0)
    throw ValidationError("class_number_imag: D must be negative");
  if (!is_fundamental_discriminant(D))
    throw ValidationError("class_number_imag: non-fundamental discriminant");
  const std::int64_t absD = -D;
  std::int64_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= absD; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2) != 0)
        continue;
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0)
        continue;
      const std::int64_t c = num / (4 * a);
      if (c < a)
        continue;
      if (a == c && b < 0)
        continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1)
        continue;
      ++h;
    }
  }
  return h;
}

/// epsilon = (a + b sqrt D)/2, a^2 - D b^2 = +-4.
struct UnitData {
  std::int64_t disc = 0;
  BigInt a;
  BigInt b;
  int norm = 1;
  double epsilon = 0.0; ///< +inf when beyond double range
  double regulator = 0.0;
};

struct UnitOptions {
  std::uint64_t max_period = 2'000'000;
};

/// Fundamental unit of the maximal order of Q(sqrt D), D > 0, from the
/// continued fraction of omega = (D mod 2 + sqrt D)/2.
inline UnitData fundamental_unit(std::int64_t D, const UnitOptions &opt = {}) {
  if (D <= 0)
    throw ValidationError("fundamental_unit: D must be positive");
  if (!is_fundamental_discriminant(D))
    throw ValidationError("fundamental_unit: non-fundamental discriminant");
  const bool odd = (D % 2) != 0;
  std::int64_t P = odd ? 1 : 0;
  std::int64_t Q = odd ? 2 : 1;
  // omega = (P + sqrt(Dr)) / Q with Q | Dr - P^2, so every complete quotient
  // stays in that shape.
  const std::int64_t Dr = odd ? D : D / 4;
  const auto isqrt = [](std::int64_t v) {
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
    while (s * s > v)
      --s;
    while ((s + 1) * (s + 1) <= v)
      ++s;
    return s;
  };
  const std::int64_t root = isqrt(Dr);
  // Convergents h/k of omega: h_{-2} = 0, h_{-1} = 1, k_{-2} = 1, k_{-1} = 0.
  BigInt h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  for (std::uint64_t step = 0; step < opt.max_period; ++step) {
    if (Q <= 0)
      throw ValidationError("fundamental_unit: continued fraction left the reduced range");
    const std::int64_t a_i = (P + root) / Q;
    BigInt h = a_i * h1 + h2;
    BigInt k = a_i * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    // Candidate unit from the convergent h/k of omega.
    BigInt ua = odd ? BigInt(2 * h - k) : BigInt(2 * h);
    BigInt ub = k;
    BigInt nrm = ua * ua - BigInt(D) * ub * ub;
    if (ua > 0 && (nrm == 4 || nrm == -4)) {
      UnitData u;
      u.disc = D;
      u.a = ua;
      u.b = ub;
      u.norm = nrm > 0 ? 1 : -1;
      const long double la = log_big(ua);
      long double ratio = std::sqrt(static_cast<long double>(D)) * std::exp(log_big(ub) - la);
      u.regulator = static_cast<double>(la + std::log1p(ratio) - std::log(2.0L));
      u.epsilon = u.regulator < 700 ? std::exp(u.regulator) : HUGE_VAL;
      return u;
    }
    // Next complete quotient.
    P = a_i * Q - P;
    Q = (Dr - P * P) / Q;
  }
  throw BudgetError("fundamental_unit: continued fraction exceeded the period bound");
}

struct RoundedClassNumber {
  std::int64_t h = 0;
  bool ambiguous = false;
};

inline RoundedClassNumber round_class_number(double estimate, double tolerance = 1e-6) {
  RoundedClassNumber r;
  r.h = std::llround(estimate);
  r.ambiguous = std::fabs(estimate - static_cast<double>(r.h)) > tolerance;
  return r;
}

struct ClassNumberCheck {
  double kappa_analytic = 0.0;
  double kappa_class_formula = 0.0;
  double abs_diff = 0.0;
  std::int64_t class_number = 0;
  double regulator = 1.0;
  bool h_ambiguous = false;
};

/// Evaluates both sides of kappa = 2^r1 (2 pi)^r2 h R / (w sqrt|D|).
inline ClassNumberCheck class_number_formula_check(const QuadField &field, std::optional<std::int64_t> h = {},
                                                   const ResidueOptions &opt = {}) {
  if (field.is_rational())
    throw ValidationError("class_number_formula_check: needs a quadratic field");
  ClassNumberCheck out;
  out.kappa_analytic = residue_kappa(field, opt);
  const double sqrtD = std::sqrt(std::fabs(static_cast<double>(field.disc)));
  const double prefactor = std::pow(2.0, field.r1) * std::pow(2.0 * std::numbers::pi, field.r2) /
                           (field.roots_of_unity * sqrtD);
  if (field.disc < 0) {
    out.regulator = 1.0;
    out.class_number = h ? *h : class_number_imag(field.disc);
  } else {
    out.regulator = fundamental_unit(field.disc).regulator;
    if (h) {
      out.class_number = *h;
    } else {
      const auto rounded = round_class_number(out.kappa_analytic / (prefactor * out.regulator));
      out.class_number = rounded.h;
      out.h_ambiguous = rounded.ambiguous;
    }
  }
  out.kappa_class_formula = prefactor * static_cast<double>(out.class_number) * out.regulator;
  out.abs_diff = std::fabs(out.kappa_analytic - out.kappa_class_formula);
  return out;
}

} // namespace mertens
