// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"
#include "mertens/exactmath/bigrational.hpp"
#include "mertens/exactmath/finite_field.hpp"
#include "mertens/exactmath/prime_sieve.hpp"
#include "mertens/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace mertens {

/// An element of F_{p^k} given by its coordinates over the fixed modulus (low -> high).
using FqCoord = std::vector<std::int64_t>;

/// One monomial c X^ex Y^ey Z^ez of a homogeneous plane model.
struct PlaneTerm {
  unsigned ex = 0, ey = 0, ez = 0;
  FqCoord c;
};

enum class ModelKind { Plane, Hyperelliptic };

struct CurveModel {
  std::string name;
  ModelKind kind = ModelKind::Plane;
  std::uint64_t p = 2;
  unsigned k = 1;
  int genus = 0;
  std::vector<PlaneTerm> plane;   ///< Plane: F(X, Y, Z) = 0
  std::vector<FqCoord> f;         ///< Hyperelliptic: y^2 = f(x), constant term first

  std::uint64_t r() const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i)
      q *= p;
    return q;
  }

  unsigned plane_degree() const { return plane.empty() ? 0 : plane.front().ex + plane.front().ey + plane.front().ez; }
};

struct CountOptions {
  std::uint64_t plane_budget = 10'000'000;
  std::uint64_t hyperelliptic_budget = 100'000'000;
  unsigned max_plane_degree = 8;
  /// Plane models are checked for singular points over every F_{r^n} of at most this size.
  std::uint64_t smoothness_check_limit = 256;
  unsigned max_brute_n = 8;
  unsigned jobs = 1;
};

namespace detail {

inline bool is_zero_coord(const FqCoord &c, std::uint64_t p) {
  for (auto v : c)
    if (v % static_cast<std::int64_t>(p) != 0)
      return false;
  return true;
}

/// r^n, or 0 if it exceeds `cap`.
inline std::uint64_t checked_power(std::uint64_t r, unsigned n, std::uint64_t cap) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > cap / r)
      return 0;
    q *= r;
  }
  return q;
}

/// Coefficient codes of f over F_r (used for the squarefree test).
inline fq_poly::Poly base_poly(const CurveModel &c, const FieldPtr &F) {
  fq_poly::Poly out;
  for (const auto &co : c.f)
    out.push_back(FqElem::from_coeffs(F, co).code());
  return out;
}

} // namespace detail

/// Structural checks: prime p, consistent genus, squarefree f, homogeneous plane model.
inline void validate_curve(const CurveModel &c, const CountOptions &opt = {}) {
  detail::require(c.p >= 2 && is_prime_u64(c.p), "curve: p must be prime");
  detail::require(c.k >= 1 && c.r() < (1ull << 31), "curve: field F_{p^k} out of range");
  for (const auto &t : c.plane)
    detail::require(t.c.size() <= c.k, "curve: coefficient has more than k coordinates");
  for (const auto &co : c.f)
    detail::require(co.size() <= c.k, "curve: coefficient has more than k coordinates");
  if (c.kind == ModelKind::Hyperelliptic) {
    detail::require(c.p % 2 == 1, "hyperelliptic model needs odd characteristic");
    detail::require(!c.f.empty() && !detail::is_zero_coord(c.f.back(), c.p),
                    "hyperelliptic: leading coefficient of f must be nonzero");
    const int deg = static_cast<int>(c.f.size()) - 1;
    detail::require(deg >= 1, "hyperelliptic: f must be nonconstant");
    detail::require(c.genus == (deg - 1) / 2,
                    "hyperelliptic: declared genus " + std::to_string(c.genus) + " but deg f = " + std::to_string(deg));
    auto F = GaloisField::make(c.p, c.k);
    const auto fp = detail::base_poly(c, F);
    const auto g = fq_poly::gcd(fp, fq_poly::derivative(fp, *F), *F);
    detail::require(g.size() == 1, "hyperelliptic: f is not squarefree (singular model)");
    return;
  }
  detail::require(!c.plane.empty(), "plane: no terms");
  const unsigned m = c.plane_degree();
  for (const auto &t : c.plane)
    detail::require(t.ex + t.ey + t.ez == m, "plane: polynomial is not homogeneous");
  detail::require(m >= 1 && m <= opt.max_plane_degree, "plane: degree outside the configured cap");
  detail::require(c.genus == static_cast<int>((m - 1) * (m - 2) / 2),
                  "plane: declared genus " + std::to_string(c.genus) + " does not match degree " + std::to_string(m));
  bool any = false;
  for (const auto &t : c.plane)
    any = any || !detail::is_zero_coord(t.c, c.p);
  detail::require(any, "plane: all coefficients vanish");
}

namespace detail {

struct ExtensionContext {
  FieldPtr big;
  std::vector<GaloisField::Code> emb;
};

inline ExtensionContext extension(const CurveModel &c, unsigned n) {
  ExtensionContext ctx;
  auto small = GaloisField::make(c.p, c.k);
  ctx.big = n == 1 ? small : GaloisField::make(c.p, c.k * n);
  if (n == 1) {
    ctx.emb.resize(small->order());
    for (std::uint64_t i = 0; i < small->order(); ++i)
      ctx.emb[i] = static_cast<GaloisField::Code>(i);
  } else {
    ctx.emb = embedding(*small, *ctx.big);
  }
  return ctx;
}

inline GaloisField::Code lift(const CurveModel &c, const ExtensionContext &ctx, const FqCoord &co) {
  std::vector<std::uint64_t> d(c.k, 0);
  const auto p = static_cast<std::int64_t>(c.p);
  for (std::size_t i = 0; i < co.size(); ++i)
    d[i] = static_cast<std::uint64_t>(((co[i] % p) + p) % p);
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;)
    code = code * c.p + d[i];
  return ctx.emb[code];
}

inline std::uint64_t count_hyperelliptic(const CurveModel &c, const ExtensionContext &ctx) {
  const GaloisField &F = *ctx.big;
  fq_poly::Poly f;
  for (const auto &co : c.f)
    f.push_back(lift(c, ctx, co));
  std::int64_t total = 0;
  const std::uint64_t Q = F.order();
  for (std::uint64_t x = 0; x < Q; ++x)
    total += 1 + F.quadratic_character(fq_poly::eval(f, static_cast<GaloisField::Code>(x), F));
  if ((f.size() - 1) % 2 == 1)
    total += 1;
  else
    total += 1 + F.quadratic_character(f.back());
  return static_cast<std::uint64_t>(total);
}

struct LiftedTerm {
  unsigned ex, ey, ez;
  GaloisField::Code c;
};

inline GaloisField::Code eval_terms(const std::vector<LiftedTerm> &terms, const std::vector<GaloisField::Code> &px,
                                    const std::vector<GaloisField::Code> &py, const std::vector<GaloisField::Code> &pz,
                                    const GaloisField &F) {
  GaloisField::Code v = 0;
  for (const auto &t : terms)
    v = F.add(v, F.mul(t.c, F.mul(px[t.ex], F.mul(py[t.ey], pz[t.ez]))));
  return v;
}

inline std::vector<GaloisField::Code> powers(GaloisField::Code a, unsigned m, const GaloisField &F) {
  std::vector<GaloisField::Code> out(m + 1, 1);
  for (unsigned i = 1; i <= m; ++i)
    out[i] = F.mul(out[i - 1], a);
  return out;
}

/// Partial derivatives of the lifted model as term lists.
inline std::vector<LiftedTerm> partial(const std::vector<LiftedTerm> &terms, int var, const GaloisField &F) {
  std::vector<LiftedTerm> out;
  for (auto t : terms) {
    unsigned &e = var == 0 ? t.ex : var == 1 ? t.ey : t.ez;
    if (e == 0)
      continue;
    t.c = F.mul(t.c, F.from_int(static_cast<std::int64_t>(e)));
    --e;
    if (t.c != 0)
      out.push_back(t);
  }
  return out;
}

/// Enumerates all projective points, checks the gradient at each zero and returns the count.
inline std::uint64_t plane_enumerate_smooth(const std::vector<LiftedTerm> &terms, unsigned m, const GaloisField &F) {
  const auto dX = partial(terms, 0, F), dY = partial(terms, 1, F), dZ = partial(terms, 2, F);
  const std::uint64_t Q = F.order();
  std::uint64_t count = 0;
  auto visit = [&](GaloisField::Code X, GaloisField::Code Y, GaloisField::Code Z) {
    const auto px = powers(X, m, F), py = powers(Y, m, F), pz = powers(Z, m, F);
    if (eval_terms(terms, px, py, pz, F) != 0)
      return;
    ++count;
    if (eval_terms(dX, px, py, pz, F) == 0 && eval_terms(dY, px, py, pz, F) == 0 &&
        eval_terms(dZ, px, py, pz, F) == 0)
      throw ValidationError("plane: singular point over F_" + std::to_string(Q));
  };
  for (std::uint64_t x = 0; x < Q; ++x)
    for (std::uint64_t y = 0; y < Q; ++y)
      visit(static_cast<GaloisField::Code>(x), static_cast<GaloisField::Code>(y), 1);
  for (std::uint64_t y = 0; y < Q; ++y)
    visit(1, static_cast<GaloisField::Code>(y), 0);
  visit(0, 1, 0);
  return count;
}

inline std::uint64_t count_plane(const CurveModel &c, const ExtensionContext &ctx, const CountOptions &opt) {
  const GaloisField &F = *ctx.big;
  const unsigned m = c.plane_degree();
  std::vector<LiftedTerm> terms;
  for (const auto &t : c.plane) {
    const auto code = lift(c, ctx, t.c);
    if (code != 0)
      terms.push_back({t.ex, t.ey, t.ez, code});
  }
  const std::uint64_t Q = F.order();

  // Affine chart Z = 1: for each x the y-polynomial sum_j A_j(x) y^j.
  std::vector<fq_poly::Poly> A(m + 1);
  for (const auto &t : terms) {
    auto &a = A[t.ey];
    if (a.size() <= t.ex)
      a.resize(t.ex + 1, 0);
    a[t.ex] = F.add(a[t.ex], t.c);
  }
  auto root_count = [&](fq_poly::Poly y) -> std::uint64_t {
    fq_poly::trim(y);
    return y.empty() ? Q : fq_poly::distinct_root_count(std::move(y), F);
  };
  std::uint64_t total = 0;
  fq_poly::Poly ypoly(m + 1);
  for (std::uint64_t x = 0; x < Q; ++x) {
    for (unsigned j = 0; j <= m; ++j)
      ypoly[j] = fq_poly::eval(A[j], static_cast<GaloisField::Code>(x), F);
    total += root_count(ypoly);
  }
  // Line at infinity: (1 : y : 0) and (0 : 1 : 0).
  fq_poly::Poly inf(m + 1, 0);
  GaloisField::Code top = 0;
  for (const auto &t : terms) {
    if (t.ez != 0)
      continue;
    inf[t.ey] = F.add(inf[t.ey], t.c);
    if (t.ex == 0)
      top = F.add(top, t.c);
  }
  total += root_count(inf);
  if (top == 0)
    total += 1;

  if (Q <= opt.smoothness_check_limit) {
    const auto check = plane_enumerate_smooth(terms, m, F);
    if (check != total)
      throw std::logic_error("plane: root counting disagrees with enumeration");
  }
  return total;
}

} // namespace detail

/// #X(F_{r^n}) for the smooth projective model.
inline std::uint64_t count_points(const CurveModel &c, unsigned n, const CountOptions &opt = {}) {
  detail::require(n >= 1, "count_points: n must be >= 1");
  validate_curve(c, opt);
  const std::uint64_t budget = c.kind == ModelKind::Plane ? opt.plane_budget : opt.hyperelliptic_budget;
  const std::uint64_t Q = detail::checked_power(c.r(), n, std::min<std::uint64_t>(budget, 0xffffffffull));
  if (Q == 0)
    throw BudgetError("count_points: r^n = " + std::to_string(c.r()) + "^" + std::to_string(n) +
                      " exceeds the enumeration budget " + std::to_string(budget));
  const auto ctx = detail::extension(c, n);
  return c.kind == ModelKind::Plane ? detail::count_plane(c, ctx, opt) : detail::count_hyperelliptic(c, ctx);
}

/// N_1..N_M over the base field F_r.
struct PointCounts {
  std::uint64_t r = 0;
  std::vector<BigInt> N; ///< N[n-1] = #X(F_{r^n})
};

/// Weil bound (N_n - r^n - 1)^2 <= 4 g^2 r^n, exactly.
inline bool within_weil_bound(const PointCounts &pc, int g) {
  for (std::size_t i = 0; i < pc.N.size(); ++i) {
    const BigInt rn = ipow(pc.r, static_cast<unsigned>(i + 1));
    const BigInt d = pc.N[i] - rn - 1;
    if (pc.N[i] < 0 || d * d > BigInt(4) * g * g * rn)
      return false;
  }
  return true;
}

inline int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d)
      continue;
    n /= d;
    if (n % d == 0)
      return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

/// Phi_{r^m} for m = 1..M from N_n = sum_{m | n} m Phi_{r^m}; Phi[m-1].
inline std::vector<BigInt> closed_points_from_counts(const PointCounts &pc) {
  std::vector<BigInt> phi(pc.N.size());
  for (std::size_t m = 1; m <= pc.N.size(); ++m) {
    BigInt s = 0;
    for (std::size_t d = 1; d <= m; ++d)
      if (m % d == 0)
        s += moebius(m / d) * pc.N[d - 1];
    if (s % m != 0 || s < 0)
      throw ValidationError("closed_points_from_counts: inconsistent counts at degree " + std::to_string(m));
    phi[m - 1] = s / m;
  }
  return phi;
}

/// N_n recomputed from closed-point counts.
inline std::vector<BigInt> counts_from_closed_points(const std::vector<BigInt> &phi) {
  std::vector<BigInt> N(phi.size());
  for (std::size_t n = 1; n <= phi.size(); ++n)
    for (std::size_t m = 1; m <= n; ++m)
      if (n % m == 0)
        N[n - 1] += BigInt(m) * phi[m - 1];
  return N;
}

/// P_1(t) = sum a_k t^k, a_0 = 1, degree 2g.
struct ZetaNumerator {
  std::uint64_t r = 0;
  int g = 0;
  std::vector<BigInt> a;

  BigRational eval(const BigRational &t) const {
    BigRational v = 0;
    for (std::size_t i = a.size(); i-- > 0;)
      v = v * t + BigRational(a[i]);
    return v;
  }
};

/// Power sums s_n = sum alpha^n of the inverse roots, n = 1..M.
inline std::vector<BigInt> inverse_root_power_sums(const ZetaNumerator &P, std::size_t M) {
  std::vector<BigInt> s(M + 1);
  for (std::size_t n = 1; n <= M; ++n) {
    BigInt v = n < P.a.size() ? BigInt(-static_cast<long long>(n)) * P.a[n] : BigInt(0);
    for (std::size_t i = 1; i < n && i < P.a.size(); ++i)
      v -= P.a[i] * s[n - i];
    s[n] = v;
  }
  s.erase(s.begin());
  return s;
}

/// Counts N_1..N_M implied by P_1.
inline PointCounts extend_counts(const ZetaNumerator &P, std::size_t M) {
  PointCounts pc{P.r, {}};
  const auto s = inverse_root_power_sums(P, M);
  for (std::size_t n = 1; n <= M; ++n)
    pc.N.push_back(ipow(P.r, static_cast<unsigned>(n)) + 1 - s[n - 1]);
  return pc;
}

/// Inverse roots of P_1 (roots of t^{2g} P_1(1/t)) by Durand-Kerner.
inline std::vector<std::complex<long double>> inverse_roots(const ZetaNumerator &P) {
  using C = std::complex<long double>;
  const std::size_t deg = P.a.size() - 1;
  if (deg == 0)
    return {};
  std::vector<long double> c(deg + 1); // monic, c[i] multiplies z^{deg-i}
  for (std::size_t i = 0; i <= deg; ++i)
    c[i] = to_long_double(BigRational(P.a[i]));
  auto eval = [&](C z) {
    C v = 0;
    for (std::size_t i = 0; i <= deg; ++i)
      v = v * z + c[i];
    return v;
  };
  const long double rad = std::sqrt(static_cast<long double>(P.r));
  std::vector<C> z(deg);
  const C seed(0.4L, 0.9L);
  for (std::size_t i = 0; i < deg; ++i)
    z[i] = rad * std::pow(seed, static_cast<long double>(i));
  for (int iter = 0; iter < 5000; ++iter) {
    long double change = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      C den = 1;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i)
          den *= z[i] - z[j];
      if (std::abs(den) == 0)
        den = C(1e-30L, 0);
      const C step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-30L * rad)
      break;
  }
  return z;
}

/// max_i | |alpha_i| / sqrt(r) - 1 |.
inline long double root_modulus_deviation(const ZetaNumerator &P) {
  long double worst = 0;
  const long double rad = std::sqrt(static_cast<long double>(P.r));
  for (const auto &z : inverse_roots(P))
    worst = std::max(worst, std::fabs(std::abs(z) / rad - 1));
  return worst;
}

/// P_1 from N_1..N_g via Newton's identities and the functional equation;
/// every supplied N_n with n > g must then be reproduced exactly.
inline ZetaNumerator zeta_numerator(const PointCounts &pc, int g) {
  detail::require(g >= 0, "zeta_numerator: genus must be >= 0");
  if (pc.N.size() < static_cast<std::size_t>(g))
    throw ValidationError("zeta_numerator: need counts for n = 1.." + std::to_string(g));
  if (!within_weil_bound(pc, g))
    throw ValidationError("zeta_numerator: counts violate the Weil bound for genus " + std::to_string(g));
  ZetaNumerator P{pc.r, g, std::vector<BigInt>(2 * g + 1)};
  P.a[0] = 1;
  std::vector<BigInt> s(g + 1), e(g + 1);
  e[0] = 1;
  for (int n = 1; n <= g; ++n)
    s[n] = ipow(pc.r, static_cast<unsigned>(n)) + 1 - pc.N[n - 1];
  for (int k = 1; k <= g; ++k) {
    BigInt acc = 0;
    for (int i = 1; i <= k; ++i)
      acc += ((i % 2) ? 1 : -1) * e[k - i] * s[i];
    if (acc % k != 0)
      throw ValidationError("zeta_numerator: Newton identity gives a non-integral coefficient");
    e[k] = acc / k;
    P.a[k] = (k % 2) ? BigInt(-e[k]) : e[k];
  }
  for (int k = 0; k < g; ++k)
    P.a[2 * g - k] = ipow(pc.r, static_cast<unsigned>(g - k)) * P.a[k];
  const auto pred = extend_counts(P, pc.N.size());
  for (std::size_t n = g + 1; n <= pc.N.size(); ++n)
    if (pred.N[n - 1] != pc.N[n - 1])
      throw ValidationError("zeta_numerator: predicted N_" + std::to_string(n) + " = " + pred.N[n - 1].str() +
                            " but count is " + pc.N[n - 1].str());
  if (g > 0 && root_modulus_deviation(P) > 1e-6L)
    throw ValidationError("zeta_numerator: inverse roots off the circle |z| = sqrt(r); functional equation fails");
  return P;
}

/// kappa_X = P_1(1/r) / ((1 - 1/r) log r).
inline long double curve_residue(const ZetaNumerator &P) {
  const BigRational v = P.eval(BigRational(1, P.r));
  const long double r = static_cast<long double>(P.r);
  return to_long_double(v) / ((1 - 1 / r) * std::log(r));
}

/// Betti numbers (b_0, b_1, b_2) = (1, 2g, 1).
inline std::vector<std::uint64_t> curve_betti(int g) { return {1, 2u * static_cast<std::uint64_t>(g), 1}; }

/// The genus-based normalization max(g, 1) for b_X of a curve (the true value is max(2g, 1)).
inline int genus_betti_max(int g) { return std::max(g, 1); }

/// Brute-force counts up to the budget, P_1 from them, then counts up to M from P_1.
struct CurveData {
  CurveModel curve;
  std::vector<std::uint64_t> brute; ///< brute-force N_1..N_B
  ZetaNumerator P1;
  PointCounts counts;               ///< N_1..N_M
};

/// As below, with N_n supplied by `count` (e.g. a cache in front of count_points).
inline CurveData curve_data(const CurveModel &c, std::size_t M, const CountOptions &opt,
                            const std::function<std::uint64_t(unsigned)> &count) {
  validate_curve(c, opt);
  const std::uint64_t budget = c.kind == ModelKind::Plane ? opt.plane_budget : opt.hyperelliptic_budget;
  unsigned B = 0;
  while (B < opt.max_brute_n && detail::checked_power(c.r(), B + 1, std::min<std::uint64_t>(budget, 0xffffffffull)))
    ++B;
  if (B < static_cast<unsigned>(std::max(c.genus, 1)))
    throw BudgetError("curve_data: budget allows only " + std::to_string(B) + " counts, genus needs " +
                      std::to_string(c.genus));
  CurveData d{c, std::vector<std::uint64_t>(B), {}, {}};
  parallel_for(B, opt.jobs, [&](std::size_t i) { d.brute[i] = count(static_cast<unsigned>(i + 1)); });
  PointCounts brute{c.r(), {}};
  for (auto v : d.brute)
    brute.N.push_back(v);
  d.P1 = zeta_numerator(brute, c.genus);
  d.counts = extend_counts(d.P1, M);
  return d;
}

inline CurveData curve_data(const CurveModel &c, std::size_t M, const CountOptions &opt = {}) {
  return curve_data(c, M, opt, [&](unsigned n) { return count_points(c, n, opt); });
}

/// The test corpus: P^1, elliptic curves over F_2, F_3, F_5, genus 2 over F_3, genus 3 over F_5.
inline std::vector<CurveModel> corpus() {
  auto hyper = [](std::string name, std::uint64_t p, int g, std::vector<std::int64_t> f) {
    CurveModel c;
    c.name = std::move(name);
    c.kind = ModelKind::Hyperelliptic;
    c.p = p;
    c.genus = g;
    for (auto v : f)
      c.f.push_back({v});
    return c;
  };
  CurveModel line;
  line.name = "P1/F2";
  line.plane = {{0, 1, 0, {1}}};
  CurveModel e2;
  e2.name = "E/F2";
  e2.genus = 1;
  e2.plane = {{0, 2, 1, {1}}, {0, 1, 2, {1}}, {3, 0, 0, {1}}};
  return {line,
          e2,
          hyper("E/F3", 3, 1, {1, 2, 0, 1}),
          hyper("E/F5", 5, 1, {1, 1, 0, 1}),
          hyper("C2/F3", 3, 2, {1, 2, 0, 0, 0, 1}),
          hyper("C3/F5", 5, 3, {2, 1, 0, 0, 0, 0, 0, 1})};
}

} // namespace mertens
