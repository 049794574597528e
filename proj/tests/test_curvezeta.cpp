// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#include "mertens/curvezeta.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mertens;

namespace {

CurveModel by_name(const std::string &name) {
  for (auto &c : corpus())
    if (c.name == name)
      return c;
  throw std::runtime_error("no corpus curve " + name);
}

PointCounts counts_of(std::uint64_t r, std::vector<long long> v) {
  PointCounts pc{r, {}};
  for (auto x : v)
    pc.N.push_back(x);
  return pc;
}

std::vector<std::int64_t> prime_field_f(const CurveModel &c) {
  std::vector<std::int64_t> f;
  for (const auto &co : c.f)
    f.push_back(co.empty() ? 0 : co[0]);
  return f;
}

std::vector<oracle::Monomial> monomials(const CurveModel &c) {
  std::vector<oracle::Monomial> m;
  for (const auto &t : c.plane)
    m.push_back({t.ex, t.ey, t.ez, t.c.empty() ? 0 : t.c[0]});
  return m;
}

CurveModel plane_curve(std::string name, std::uint64_t p, int g, std::vector<PlaneTerm> terms) {
  CurveModel c;
  c.name = std::move(name);
  c.p = p;
  c.genus = g;
  c.plane = std::move(terms);
  return c;
}

} // namespace

TEST(CountPoints, Examples) {
  const auto line = by_name("P1/F2");
  EXPECT_EQ(count_points(line, 1), 3u);
  EXPECT_EQ(count_points(line, 2), 5u);
  const auto e = by_name("E/F2");
  EXPECT_EQ(count_points(e, 1), 3u);
  EXPECT_EQ(count_points(e, 2), 9u);
}

TEST(CountPoints, HyperellipticAgreesWithNaiveEnumeration) {
  for (const auto &c : corpus()) {
    if (c.kind != ModelKind::Hyperelliptic)
      continue;
    for (unsigned n = 1; detail::checked_power(c.r(), n, 100'000); ++n)
      EXPECT_EQ(count_points(c, n), oracle::hyperelliptic_count_naive(c.p, n, prime_field_f(c))) << c.name << " " << n;
  }
}

TEST(CountPoints, EvenDegreeModelsAgreeWithNaiveEnumeration) {
  CurveModel c;
  c.kind = ModelKind::Hyperelliptic;
  c.p = 7;
  c.genus = 1;
  for (std::int64_t lead : {1, 3}) { // square and non-square leading coefficient mod 7
    c.f = {{1}, {1}, {0}, {0}, {lead}};
    std::vector<std::int64_t> f{1, 1, 0, 0, lead};
    for (unsigned n = 1; n <= 4; ++n)
      EXPECT_EQ(count_points(c, n), oracle::hyperelliptic_count_naive(7, n, f)) << lead << " " << n;
  }
}

TEST(CountPoints, PlaneAgreesWithNaiveEnumeration) {
  std::vector<CurveModel> curves{by_name("P1/F2"), by_name("E/F2"),
                                 plane_curve("fermat3/F7", 7, 1, {{3, 0, 0, {1}}, {0, 3, 0, {1}}, {0, 0, 3, {1}}}),
                                 plane_curve("fermat4/F3", 3, 3, {{4, 0, 0, {1}}, {0, 4, 0, {1}}, {0, 0, 4, {1}}}),
                                 plane_curve("klein/F2", 2, 3, {{3, 1, 0, {1}}, {0, 3, 1, {1}}, {1, 0, 3, {1}}})};
  for (const auto &c : curves)
    for (unsigned n = 1; detail::checked_power(c.r(), n, 400); ++n)
      EXPECT_EQ(count_points(c, n), oracle::plane_count_naive(c.p, n, monomials(c))) << c.name << " " << n;
}

TEST(CountPoints, RejectsBadModels) {
  // Cusp Y^2 Z = X^3.
  auto cusp = plane_curve("cusp", 5, 1, {{0, 2, 1, {1}}, {3, 0, 0, {-1}}});
  EXPECT_THROW(count_points(cusp, 1), ValidationError);
  CurveModel h;
  h.kind = ModelKind::Hyperelliptic;
  h.p = 5;
  h.genus = 1;
  h.f = {{1}, {-1}, {-1}, {1}}; // (x - 1)^2 (x + 1)
  EXPECT_THROW(count_points(h, 1), ValidationError);
  h.f = {{1}, {1}, {0}, {1}};
  h.genus = 2;
  EXPECT_THROW(count_points(h, 1), ValidationError);
  h.genus = 1;
  h.p = 2;
  EXPECT_THROW(count_points(h, 1), ValidationError);
  auto notHomog = plane_curve("bad", 3, 1, {{3, 0, 0, {1}}, {0, 2, 0, {1}}});
  EXPECT_THROW(count_points(notHomog, 1), ValidationError);
  EXPECT_THROW(count_points(by_name("E/F2"), 0), ValidationError);
}

TEST(CountPoints, BudgetExhaustion) {
  CountOptions opt;
  opt.plane_budget = 100;
  EXPECT_EQ(count_points(by_name("E/F2"), 6, opt), oracle::plane_count_naive(2, 6, monomials(by_name("E/F2"))));
  EXPECT_THROW(count_points(by_name("E/F2"), 7, opt), BudgetError);
  opt.max_brute_n = 8;
  opt.hyperelliptic_budget = 10;
  EXPECT_THROW(curve_data(by_name("C3/F5"), 12, opt), BudgetError);
}

TEST(CountPoints, ExtensionBaseFieldsMatchBaseChange) {
  // A curve over F_9 with F_3 coefficients counts like its F_3 model over F_{3^{2n}}.
  auto c3 = by_name("C2/F3");
  auto c9 = c3;
  c9.k = 2;
  for (unsigned n = 1; n <= 3; ++n)
    EXPECT_EQ(count_points(c9, n), count_points(c3, 2 * n)) << n;
  auto e4 = by_name("E/F2");
  e4.k = 2;
  for (unsigned n = 1; n <= 3; ++n)
    EXPECT_EQ(count_points(e4, n), count_points(by_name("E/F2"), 2 * n)) << n;
}

TEST(CountPoints, GenuineExtensionCoefficients) {
  // y^2 = x^3 + a x + 1 with a a generator of F_9 over F_3.
  CurveModel c;
  c.kind = ModelKind::Hyperelliptic;
  c.p = 3;
  c.k = 2;
  c.genus = 1;
  c.f = {{1}, {0, 1}, {0}, {1}};
  CountOptions opt;
  opt.max_brute_n = 6;
  const auto d = curve_data(c, 8, opt);
  EXPECT_EQ(d.brute.size(), 6u);
  EXPECT_TRUE(within_weil_bound(d.counts, 1));
  for (std::size_t n = 1; n <= d.brute.size(); ++n)
    EXPECT_EQ(d.counts.N[n - 1], d.brute[n - 1]);
}

TEST(ClosedPoints, Examples) {
  auto phi = closed_points_from_counts(counts_of(2, {3, 5, 9, 17}));
  EXPECT_EQ(phi[0], 3);
  EXPECT_EQ(phi[1], 1);
  EXPECT_EQ(phi[2], 2);
  EXPECT_EQ(phi[3], 3);
  phi = closed_points_from_counts(counts_of(2, {3, 9}));
  EXPECT_EQ(phi[0], 3);
  EXPECT_EQ(phi[1], 3);
  EXPECT_THROW(closed_points_from_counts(counts_of(2, {3, 4})), ValidationError);
  EXPECT_THROW(closed_points_from_counts(counts_of(2, {3, 1})), ValidationError);
}

TEST(ClosedPoints, MoebiusRoundTripOnCorpus) {
  for (const auto &c : corpus()) {
    const auto d = curve_data(c, 24);
    const auto phi = closed_points_from_counts(d.counts);
    EXPECT_EQ(phi[0], d.counts.N[0]) << c.name;
    EXPECT_EQ(counts_from_closed_points(phi), d.counts.N) << c.name;
    for (const auto &v : phi)
      EXPECT_GE(v, 0);
  }
}

TEST(ClosedPoints, MoebiusFunction) {
  const int expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n)
    EXPECT_EQ(moebius(n), expect[n - 1]) << n;
}

TEST(ZetaNumerator, Examples) {
  auto P = zeta_numerator(counts_of(2, {3, 5, 9}), 0);
  EXPECT_EQ(P.a, std::vector<BigInt>{1});
  P = zeta_numerator(counts_of(2, {3}), 1);
  EXPECT_EQ(P.a, (std::vector<BigInt>{1, 0, 2}));
  EXPECT_EQ(extend_counts(P, 2).N[1], 9);
  EXPECT_EQ(P.eval(1), 3);
}

TEST(ZetaNumerator, RejectsInconsistentData) {
  EXPECT_THROW(zeta_numerator(counts_of(2, {3, 8}), 1), ValidationError);   // wrong N_2
  EXPECT_THROW(zeta_numerator(counts_of(2, {3, 9}), 0), ValidationError);   // wrong genus
  EXPECT_THROW(zeta_numerator(counts_of(2, {}), 1), ValidationError);       // too few counts
  EXPECT_THROW(zeta_numerator(counts_of(3, {20}), 1), ValidationError);     // Weil bound
}

TEST(ZetaNumerator, PredictsBruteForceCountsOnCorpus) {
  for (const auto &c : corpus()) {
    const auto d = curve_data(c, 12);
    EXPECT_EQ(d.brute.size(), 8u) << c.name;
    // Naive counts for n <= g only, then P_1 predictions for g < n <= 8 against naive counts.
    for (std::size_t n = 1; n <= d.brute.size(); ++n) {
      const std::uint64_t naive = c.kind == ModelKind::Plane
                                      ? oracle::plane_count_naive(c.p, static_cast<unsigned>(n), monomials(c))
                                      : oracle::hyperelliptic_count_naive(c.p, static_cast<unsigned>(n), prime_field_f(c));
      EXPECT_EQ(d.counts.N[n - 1], naive) << c.name << " n=" << n;
    }
  }
}

TEST(ZetaNumerator, FunctionalEquationAndRootModuli) {
  for (const auto &c : corpus()) {
    const auto P = curve_data(c, 8).P1;
    ASSERT_EQ(P.a.size(), static_cast<std::size_t>(2 * c.genus + 1));
    EXPECT_EQ(P.a[0], 1);
    for (int k = 0; k <= c.genus; ++k)
      EXPECT_EQ(P.a[2 * c.genus - k], ipow(P.r, static_cast<unsigned>(c.genus - k)) * P.a[k]) << c.name;
    EXPECT_LT(root_modulus_deviation(P), 1e-6L) << c.name;
    EXPECT_EQ(inverse_roots(P).size(), static_cast<std::size_t>(2 * c.genus));
  }
}

TEST(ZetaNumerator, PowerSumsMatchInverseRoots) {
  const auto P = curve_data(by_name("C3/F5"), 8).P1;
  const auto roots = inverse_roots(P);
  const auto s = inverse_root_power_sums(P, 6);
  for (unsigned n = 1; n <= 6; ++n) {
    std::complex<long double> acc = 0;
    for (const auto &z : roots)
      acc += std::pow(z, static_cast<long double>(n));
    EXPECT_NEAR(static_cast<double>(acc.real()), static_cast<double>(to_long_double(BigRational(s[n - 1]))), 1e-6);
    EXPECT_NEAR(static_cast<double>(acc.imag()), 0.0, 1e-6);
  }
}

TEST(CurveResidue, Examples) {
  const auto line = zeta_numerator(counts_of(2, {3}), 0);
  EXPECT_NEAR(static_cast<double>(curve_residue(line)), 2.0 / std::log(2.0), 1e-15);
  EXPECT_NEAR(static_cast<double>(curve_residue(line)), 2.88539, 1e-5);
  const auto e = zeta_numerator(counts_of(2, {3}), 1);
  EXPECT_NEAR(static_cast<double>(curve_residue(e)), 1.5 / (0.5 * std::log(2.0)), 1e-15);
  EXPECT_NEAR(static_cast<double>(curve_residue(e)), 4.32809, 1e-5);
}

TEST(CurveResidue, GroupOrderIsPOneAtOne) {
  for (const auto &c : corpus()) {
    const auto d = curve_data(c, 4);
    EXPECT_GT(curve_residue(d.P1), 0) << c.name;
    if (c.genus == 1) {
      EXPECT_EQ(d.P1.eval(1), BigRational(d.counts.N[0])) << c.name;
    }
  }
}

TEST(Betti, ConventionsExposed) {
  EXPECT_EQ(genus_betti_max(0), 1);
  EXPECT_EQ(genus_betti_max(1), 1);
  EXPECT_EQ(genus_betti_max(2), 2);
  EXPECT_EQ(curve_betti(2), (std::vector<std::uint64_t>{1, 4, 1}));
  for (const auto &c : corpus())
    if (c.genus <= 2) {
      EXPECT_EQ(genus_betti_max(c.genus), std::max(c.genus, 1));
    }
}

TEST(CurveData, ParallelMatchesSerial) {
  CountOptions par;
  par.jobs = 4;
  for (const auto &c : corpus()) {
    const auto a = curve_data(c, 10), b = curve_data(c, 10, par);
    EXPECT_EQ(a.brute, b.brute) << c.name;
    EXPECT_EQ(a.counts.N, b.counts.N) << c.name;
  }
}
