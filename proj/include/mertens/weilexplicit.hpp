// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/curvezeta.hpp"
#include "mertens/error.hpp"
#include "mertens/exactmath/analytic.hpp"
#include "mertens/exactmath/bigrational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mertens {

/// More point counts are needed to certify a limit to the requested accuracy.
class InsufficientCounts : public BudgetError {
public:
  using BudgetError::BudgetError;
};

/// Dimension, base field size, Betti numbers b_0..b_{2d} and counts N_1..N_M.
struct WeilData {
  std::string name;
  unsigned d = 1;
  std::uint64_t r = 2;
  std::vector<std::uint64_t> betti;
  std::vector<BigInt> N; ///< N[n-1] = #X(F_{r^n})

  std::size_t M() const { return N.size(); }

  std::uint64_t b_X() const { return *std::max_element(betti.begin(), betti.end()); }

  std::uint64_t betti_sum() const {
    std::uint64_t s = 0;
    for (auto b : betti)
      s += b;
    return s;
  }

  /// sum_{i=1}^{2d-1} b_i: the order of the trace recurrence.
  std::uint64_t middle_betti_sum() const { return betti_sum() - 2; }

  /// r^{dn}
  BigInt top(std::size_t n) const { return ipow(r, static_cast<unsigned>(d * n)); }

  /// N_n - 1 - r^{dn} = sum_i (-1)^i tr(Frob^n | H^i).
  BigInt trace(std::size_t n) const { return N[n - 1] - 1 - top(n); }

  PointCounts counts() const { return {r, N}; }
};

namespace detail {

inline BigInt isqrt_ceil(const BigInt &v) {
  BigInt s = boost::multiprecision::sqrt(v);
  return s * s == v ? s : s + 1;
}

} // namespace detail

/// Sum_i b_i r^{in/2}, each irrational term rounded up.
inline BigInt deligne_budget(const WeilData &w, std::size_t n) {
  BigInt s = 0;
  for (unsigned i = 1; i + 1 < w.betti.size(); ++i)
    s += BigInt(w.betti[i]) * detail::isqrt_ceil(ipow(w.r, static_cast<unsigned>(i * n)));
  return s;
}

/// Poincare duality, b_0 = b_{2d} = 1 and the Deligne bound on every count.
inline void validate_weil(const WeilData &w) {
  detail::require(w.d >= 1, "WeilData: dimension must be >= 1");
  detail::require(w.r >= 2, "WeilData: r must be >= 2");
  detail::require(w.betti.size() == 2 * w.d + 1, "WeilData: need Betti numbers b_0..b_{2d}");
  detail::require(w.betti.front() == 1 && w.betti.back() == 1, "WeilData: b_0 = b_{2d} = 1 required");
  for (std::size_t i = 0; i < w.betti.size(); ++i)
    detail::require(w.betti[i] == w.betti[w.betti.size() - 1 - i], "WeilData: Betti numbers violate Poincare duality");
  for (std::size_t n = 1; n <= w.M(); ++n) {
    detail::require(w.N[n - 1] >= 0, "WeilData: negative count");
    BigInt t = w.trace(n);
    if (t < 0)
      t = -t;
    if (t > deligne_budget(w, n))
      throw ValidationError("WeilData: N_" + std::to_string(n) + " = " + w.N[n - 1].str() +
                            " violates the Deligne bound");
  }
}

inline WeilData weil_from_curve(const CurveData &c) {
  WeilData w{c.curve.name, 1, c.counts.r, curve_betti(c.curve.genus), c.counts.N};
  validate_weil(w);
  return w;
}

/// Truncation weights v_n = 1/n (n <= N), 0 beyond.
struct TruncatedWeights {
  std::size_t N = 1;
  BigRational operator()(std::size_t n) const { return n <= N ? BigRational(1, n) : BigRational(0); }
};

struct ExplicitFormulaSplit {
  std::size_t N = 0;
  BigRational S0, S1, S2, S3;
  bool identity_holds = false;
};

/// S_0..S_3 for N = 1..Nmax in one pass.  Phi must re-sum to the counts.
inline std::vector<ExplicitFormulaSplit> s_terms_sweep(const WeilData &w, std::size_t Nmax,
                                                       const std::vector<BigInt> &phi) {
  if (Nmax > w.M())
    throw ValidationError("s_terms: N = " + std::to_string(Nmax) + " exceeds the " + std::to_string(w.M()) +
                          " available counts");
  if (phi.size() < Nmax)
    throw ValidationError("s_terms: closed-point counts do not cover N");
  std::vector<BigInt> prefix(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(Nmax));
  const auto resum = counts_from_closed_points(prefix);
  for (std::size_t n = 1; n <= Nmax; ++n)
    if (resum[n - 1] != w.N[n - 1])
      throw ValidationError("s_terms: closed points do not re-sum to N_" + std::to_string(n));

  std::vector<ExplicitFormulaSplit> out;
  BigRational S0 = 0, S1 = 0, S2 = 0, S3 = 0;
  for (std::size_t N = 1; N <= Nmax; ++N) {
    const BigRational inv_top(BigInt(1), w.top(N));
    // New (f, m) pairs with f m = N contribute Phi_f / (m r^{dN}).
    BigRational dS0 = 0;
    for (std::size_t f = 1; f <= N; ++f)
      if (N % f == 0)
        dS0 += BigRational(phi[f - 1], BigInt(N / f));
    S0 += dS0 * inv_top;
    S1 += BigRational(1, N);
    S2 += BigRational(BigInt(1), BigInt(N) * w.top(N));
    S3 += BigRational(w.trace(N), BigInt(N) * w.top(N));
    ExplicitFormulaSplit s{N, S0, S1, S2, S3, S0 == S1 + S2 + S3};
    if (!s.identity_holds)
      throw ValidationError("explicit formula identity fails at N = " + std::to_string(N));
    out.push_back(std::move(s));
  }
  return out;
}

inline ExplicitFormulaSplit s_terms(const WeilData &w, std::size_t N, const std::vector<BigInt> &phi) {
  detail::require(N >= 1, "s_terms: N must be >= 1");
  return s_terms_sweep(w, N, phi).back();
}

inline std::vector<BigInt> closed_points(const WeilData &w) { return closed_points_from_counts(w.counts()); }

/// (r^{df} + 1 + sum_i b_i r^{if/2}) / f, the bound on Phi_{r^f} from the counts.
inline long double phi_upper_bound(const WeilData &w, std::size_t f) {
  long double s = std::pow(static_cast<long double>(w.r), static_cast<long double>(w.d * f)) + 1;
  for (unsigned i = 1; i + 1 < w.betti.size(); ++i)
    s += w.betti[i] * std::pow(static_cast<long double>(w.r), i * f / 2.0L);
  return s / f;
}

inline constexpr long double lemma_slack = 1e-12L;

struct LemmaCheck {
  std::size_t N = 0;
  long double value = 0; ///< the gap or deviation being bounded
  long double lower = 0;
  long double upper = 0;
  bool holds = false;
};

/// 0 <= sum_{f<=N} Phi_f log(r^{df}/(r^{df}-1)) - S_0 <= 8/(N r^{dN/2}) + 6b/(N r^{(d+1/2)N/2}).
inline LemmaCheck lemma_s0_bound(const WeilData &w, std::size_t N, const std::vector<BigInt> &phi,
                                 const std::optional<ExplicitFormulaSplit> &split = {}) {
  const auto s = split ? *split : s_terms(w, N, phi);
  const long double r = static_cast<long double>(w.r), d = w.d;
  KahanSum sum;
  for (std::size_t f = 1; f <= N; ++f)
    sum += to_long_double(BigRational(phi[f - 1])) * -std::log1p(-std::pow(r, -d * f));
  LemmaCheck c{N, sum.value() - to_long_double(s.S0), 0, 0, false};
  const long double b = static_cast<long double>(w.b_X());
  c.upper = 8 / (N * std::pow(r, d * N / 2)) + 6 * b / (N * std::pow(r, (d + 0.5L) * N / 2));
  c.holds = c.value >= -lemma_slack && c.value <= c.upper + lemma_slack;
  return c;
}

/// 1/(N(N+1)) <= S_1(N) - log N - gamma <= 1/N.  Fails at N = 1 (1 - gamma < 1/2).
inline LemmaCheck lemma_s1_bound(std::size_t N) {
  detail::require(N >= 1, "lemma_s1_bound: N must be >= 1");
  KahanSum h;
  for (std::size_t n = N; n >= 1; --n)
    h += 1.0L / n;
  const long double Nl = static_cast<long double>(N);
  LemmaCheck c{N, h.value() - std::log(Nl) - euler_gamma(), 1 / (Nl * (Nl + 1)), 1 / Nl, false};
  c.holds = c.value >= c.lower - lemma_slack && c.value <= c.upper + lemma_slack;
  return c;
}

/// 0 <= log(r^d/(r^d-1)) - S_2(N) <= 1/(r^{dN} (N+1) (r^d - 1)).
inline LemmaCheck lemma_s2_bound(const WeilData &w, std::size_t N) {
  detail::require(N >= 1, "lemma_s2_bound: N must be >= 1");
  BigRational S2 = 0;
  for (std::size_t n = 1; n <= N; ++n)
    S2 += BigRational(BigInt(1), BigInt(n) * w.top(n));
  const long double rd = std::pow(static_cast<long double>(w.r), static_cast<long double>(w.d));
  LemmaCheck c{N, -std::log1p(-1 / rd) - to_long_double(S2), 0, 0, false};
  c.upper = 1 / (std::pow(rd, static_cast<long double>(N)) * (N + 1) * (rd - 1));
  c.holds = c.value >= -lemma_slack && c.value <= c.upper + lemma_slack;
  return c;
}

/// sum_{n>M} (1/n) sum_i b_i x_i^n <= (1/(M+1)) sum_i b_i x_i^{M+1}/(1 - x_i), x_i = r^{i/2 - d}.
inline long double deligne_tail(const WeilData &w, std::size_t M, bool include_b0) {
  long double t = 0;
  const long double r = static_cast<long double>(w.r);
  for (unsigned i = include_b0 ? 0 : 1; i < 2 * w.d; ++i) {
    const long double x = std::pow(r, i / 2.0L - w.d);
    t += w.betti[i] * std::pow(x, static_cast<long double>(M + 1)) / (1 - x);
  }
  return t / (M + 1);
}

/// sum_{n<=M} (1/n) r^{-dn} (N_n - 1 - r^{dn}): the limit of S_3, truncated.
inline long double s3_limit_truncated(const WeilData &w, std::size_t M) {
  KahanSum s;
  for (std::size_t n = 1; n <= M; ++n)
    s += to_long_double(BigRational(w.trace(n), BigInt(n) * w.top(n)));
  return s.value();
}

struct S3Check {
  LemmaCheck lemma;
  long double limit = 0;      ///< truncated at all available counts
  long double limit_tail = 0; ///< rigorous bound on the omitted tail
};

/// |S_3(N) - lim S_3| <= b / ((r^{1/2} - 1)(N + 1)(r^{N/2} - 1)).  The limit is
/// evaluated from every available count; its tail must stay below 1% of the bound.
inline S3Check lemma_s3_bound(const WeilData &w, std::size_t N, const std::optional<ExplicitFormulaSplit> &split = {}) {
  detail::require(N >= 1 && N <= w.M(), "lemma_s3_bound: need 1 <= N <= M");
  BigRational S3 = 0;
  if (split) {
    S3 = split->S3;
  } else {
    for (std::size_t n = 1; n <= N; ++n)
      S3 += BigRational(w.trace(n), BigInt(n) * w.top(n));
  }
  S3Check out;
  out.limit = s3_limit_truncated(w, w.M());
  out.limit_tail = deligne_tail(w, w.M(), false);
  const long double r = static_cast<long double>(w.r), b = static_cast<long double>(w.b_X());
  auto &c = out.lemma;
  c.N = N;
  c.value = std::fabs(to_long_double(S3) - out.limit);
  c.upper = b / ((std::sqrt(r) - 1) * (N + 1) * (std::pow(r, N / 2.0L) - 1));
  if (out.limit_tail > 0.01L * c.upper)
    throw InsufficientCounts("lemma_s3_bound: " + std::to_string(w.M()) + " counts leave a tail of " +
                             std::to_string(static_cast<double>(out.limit_tail)) + " against a bound of " +
                             std::to_string(static_cast<double>(c.upper)) + " at N = " + std::to_string(N));
  c.holds = c.value + out.limit_tail <= c.upper + lemma_slack;
  return out;
}

/// Linear recurrence s_n = sum_{j=1}^L c_j s_{n-j} found by Berlekamp-Massey over Q.
inline std::vector<BigRational> berlekamp_massey(const std::vector<BigRational> &s) {
  std::vector<BigRational> C{1}, B{1};
  std::size_t L = 0, m = 1;
  BigRational b = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    BigRational delta = s[n];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i)
      delta += C[i] * s[n - i];
    if (delta == 0) {
      ++m;
      continue;
    }
    const BigRational coef = delta / b;
    auto T = C;
    if (C.size() < B.size() + m)
      C.resize(B.size() + m, BigRational(0));
    for (std::size_t i = 0; i < B.size(); ++i)
      C[i + m] -= coef * B[i];
    if (2 * L <= n) {
      L = n + 1 - L;
      B = std::move(T);
      b = delta;
      m = 1;
    } else {
      ++m;
    }
  }
  C.resize(L + 1, BigRational(0));
  std::vector<BigRational> rec(L);
  for (std::size_t j = 1; j <= L; ++j)
    rec[j - 1] = -C[j];
  return rec;
}

struct CountResidueOptions {
  /// Throw InsufficientCounts when the truncation tail exceeds this.
  std::optional<long double> tolerance;
  /// Extend the trace sequence by its linear recurrence when the counts determine it.
  bool complete = true;
  long double completion_target = 1e-17L;
  std::size_t max_completion = 4000;
};

struct CountResidue {
  long double log_kappa_log_r = 0; ///< truncated sum
  long double kappa_log_r = 0;
  long double tail_bound = 0;      ///< on log(kappa log r)
  bool completed = false;
  std::size_t recurrence_order = 0;
  std::size_t terms_used = 0;
  long double completed_log_kappa_log_r = 0;
  long double completed_kappa_log_r = 0;
  long double completed_tail_bound = 0;
};

/// log(kappa_X log r) = sum_{n>=1} (N_n - r^{dn}) / (n r^{dn}).
///
/// The plain value truncates at the available counts.  The trace sequence
/// N_n - 1 - r^{dn} satisfies a linear recurrence of order at most
/// K = sum_{i=1}^{2d-1} b_i, so 2K counts determine it; when M >= 2K the
/// recurrence is recovered exactly and the sum is continued to the target.
inline CountResidue residue_from_counts(const WeilData &w, const CountResidueOptions &opt = {}) {
  detail::require(w.M() >= 1, "residue_from_counts: no counts");
  CountResidue out;
  KahanSum s;
  for (std::size_t n = 1; n <= w.M(); ++n)
    s += to_long_double(BigRational(w.N[n - 1] - w.top(n), BigInt(n) * w.top(n)));
  out.log_kappa_log_r = s.value();
  out.kappa_log_r = std::exp(out.log_kappa_log_r);
  out.tail_bound = deligne_tail(w, w.M(), true);
  out.terms_used = w.M();

  const std::size_t K = w.middle_betti_sum();
  if (opt.complete && w.M() >= 2 * K) {
    std::vector<BigRational> seq;
    for (std::size_t n = 1; n <= w.M(); ++n)
      seq.push_back(BigRational(w.trace(n)));
    const auto rec = berlekamp_massey(seq);
    bool ok = rec.size() <= K;
    for (std::size_t n = rec.size(); ok && n < seq.size(); ++n) {
      BigRational v = 0;
      for (std::size_t j = 0; j < rec.size(); ++j)
        v += rec[j] * seq[n - 1 - j];
      ok = v == seq[n];
    }
    if (ok) {
      KahanSum c = s;
      std::size_t n = w.M();
      while (deligne_tail(w, n, true) > opt.completion_target && n < opt.max_completion) {
        BigRational v = 0;
        for (std::size_t j = 0; j < rec.size(); ++j)
          v += rec[j] * seq[seq.size() - 1 - j];
        seq.push_back(v);
        ++n;
        // (N_n - r^{dn}) / (n r^{dn}) = (trace + 1) / (n r^{dn})
        c += to_long_double((v + 1) / BigRational(BigInt(n) * w.top(n)));
      }
      out.completed = true;
      out.recurrence_order = rec.size();
      out.terms_used = n;
      out.completed_log_kappa_log_r = c.value();
      out.completed_kappa_log_r = std::exp(c.value());
      out.completed_tail_bound = deligne_tail(w, n, true);
    }
  }
  const long double best_tail = out.completed ? out.completed_tail_bound : out.tail_bound;
  if (opt.tolerance && best_tail > *opt.tolerance)
    throw InsufficientCounts("residue_from_counts: tail bound " + std::to_string(static_cast<double>(best_tail)) +
                             " exceeds tolerance");
  return out;
}

struct VarietyMertensReport {
  std::string name;
  std::size_t N = 0;
  long double sum = 0;       ///< sum_{m<=N} Phi_m log(r^{dm}/(r^{dm}-1))
  long double main_term = 0; ///< log N + gamma + log(kappa log r)
  long double error = 0;
  long double shape_1_over_N = 0;
  long double shape_betti = 0; ///< b_X r^{-N/2} / N
};

inline VarietyMertensReport variety_mertens(const WeilData &w, std::size_t N, const std::vector<BigInt> &phi,
                                            long double log_kappa_log_r) {
  detail::require(N >= 1 && N <= phi.size(), "variety_mertens: need 1 <= N <= available closed points");
  VarietyMertensReport v{w.name, N};
  const long double r = static_cast<long double>(w.r);
  KahanSum s;
  for (std::size_t m = 1; m <= N; ++m)
    s += to_long_double(BigRational(phi[m - 1])) * -std::log1p(-std::pow(r, -static_cast<long double>(w.d * m)));
  v.sum = s.value();
  v.main_term = std::log(static_cast<long double>(N)) + euler_gamma() + log_kappa_log_r;
  v.error = v.sum - v.main_term;
  v.shape_1_over_N = 1.0L / N;
  v.shape_betti = w.b_X() * std::pow(r, -static_cast<long double>(N) / 2) / N;
  return v;
}

inline VarietyMertensReport variety_mertens(const WeilData &w, std::size_t N, const std::vector<BigInt> &phi) {
  const auto res = residue_from_counts(w);
  return variety_mertens(w, N, phi, res.completed ? res.completed_log_kappa_log_r : res.log_kappa_log_r);
}

/// Frobenius eigenvalues on H^i, given without materializing them: a conjugate
/// pair with integer trace t and product r^i, or (single) the real value t = +-r^{i/2}.
struct EigenComponent {
  unsigned i = 1;
  std::int64_t trace = 0;
  bool single = false;
};

/// WeilData with N_n = 1 + r^{dn} + sum (-1)^i (power sums of the components), n = 1..M.
inline WeilData weil_from_eigen(unsigned d, std::uint64_t r, const std::vector<EigenComponent> &comps, std::size_t M,
                                std::string name = "synthetic") {
  WeilData w{std::move(name), d, r, std::vector<std::uint64_t>(2 * d + 1, 0), {}};
  w.betti.front() = w.betti.back() = 1;
  for (const auto &c : comps) {
    detail::require(c.i >= 1 && c.i < 2 * d, "eigen component degree must lie in 1..2d-1");
    const BigInt ri = ipow(r, c.i);
    if (c.single) {
      detail::require(c.i % 2 == 0 && BigInt(c.trace) * c.trace == ri, "single eigenvalue must be +-r^{i/2}");
      w.betti[c.i] += 1;
    } else {
      detail::require(BigInt(c.trace) * c.trace <= 4 * ri, "eigen pair trace exceeds 2 r^{i/2}");
      w.betti[c.i] += 2;
    }
  }
  for (std::size_t n = 1; n <= M; ++n)
    w.N.push_back(1 + w.top(n));
  for (const auto &c : comps) {
    const BigInt ri = ipow(r, c.i);
    const int sign = c.i % 2 ? -1 : 1;
    BigInt prev2 = 2, prev1 = c.trace; // p_0, p_1 of the pair
    BigInt single = 1;
    for (std::size_t n = 1; n <= M; ++n) {
      BigInt pn;
      if (c.single) {
        single *= c.trace;
        pn = single;
      } else if (n == 1) {
        pn = prev1;
      } else {
        pn = BigInt(c.trace) * prev1 - ri * prev2;
        prev2 = prev1;
        prev1 = pn;
      }
      w.N[n - 1] += sign * pn;
    }
  }
  validate_weil(w);
  return w;
}

/// Angles given as (i, num, den) meaning omega = exp(+-i pi num/den); the trace
/// 2 r^{i/2} cos(pi num/den) must be an integer.
inline EigenComponent eigen_from_angle(std::uint64_t r, unsigned i, std::int64_t num, std::int64_t den) {
  detail::require(den != 0, "eigen angle: zero denominator");
  const long double t = 2 * std::pow(static_cast<long double>(r), i / 2.0L) *
                        std::cos(std::numbers::pi_v<long double> * num / den);
  const long double rt = std::round(t);
  if (std::fabs(t - rt) > 1e-9L)
    throw ValidationError("eigen angle: trace 2 r^{i/2} cos(theta) = " + std::to_string(static_cast<double>(t)) +
                          " is not an integer");
  return {i, static_cast<std::int64_t>(rt), false};
}

struct EigenSample {
  unsigned d = 1;
  std::uint64_t r = 2;
  std::vector<EigenComponent> comps;
};

/// Random Poincare-symmetric eigen data: pairs on H^i for i < d mirrored onto
/// H^{2d-i} (eigenvalue r^{d-i} omega), plus free pairs on H^d.
inline EigenSample random_eigen(std::mt19937_64 &rng, unsigned max_d = 2) {
  const std::uint64_t rs[] = {2, 3, 4, 5, 7, 9};
  EigenSample e;
  e.d = std::uniform_int_distribution<unsigned>(1, max_d)(rng);
  e.r = rs[std::uniform_int_distribution<int>(0, 5)(rng)];
  for (unsigned i = 1; i <= e.d; ++i) {
    const int pairs = std::uniform_int_distribution<int>(0, 2)(rng);
    const auto bound = static_cast<std::int64_t>(std::floor(2 * std::sqrt(std::pow(double(e.r), double(i)))));
    for (int k = 0; k < pairs; ++k) {
      const std::int64_t t = std::uniform_int_distribution<std::int64_t>(-bound, bound)(rng);
      if (BigInt(t) * t > 4 * ipow(e.r, i))
        continue;
      e.comps.push_back({i, t, false});
      if (i < e.d)
        e.comps.push_back({2 * e.d - i, t * static_cast<std::int64_t>(ipow(e.r, e.d - i)), false});
    }
  }
  return e;
}

/// WeilData from random_eigen; samples giving a negative count or closed-point
/// number are rejected and redrawn.
inline WeilData random_weil(std::mt19937_64 &rng, std::size_t M, unsigned max_d = 2, EigenSample *chosen = nullptr) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto e = random_eigen(rng, max_d);
    WeilData w;
    try {
      w = weil_from_eigen(e.d, e.r, e.comps, M, "random");
      closed_points(w);
    } catch (const ValidationError &) {
      continue;
    }
    if (chosen)
      *chosen = e;
    return w;
  }
  throw std::runtime_error("random_weil: no admissible sample");
}

} // namespace mertens
