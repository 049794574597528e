// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#include "mertens/quadfield.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace mertens;

TEST(QuadField, ConstructionAndInvariants) {
  const auto k = QuadField::from_discriminant(-4);
  EXPECT_EQ(k.degree, 2);
  EXPECT_EQ(k.r1 + 2 * k.r2, k.degree);
  EXPECT_EQ(k.roots_of_unity, 4);
  EXPECT_DOUBLE_EQ(k.genus, std::log(2.0));
  EXPECT_EQ(QuadField::from_discriminant(-3).roots_of_unity, 6);
  EXPECT_EQ(QuadField::from_discriminant(5).r1, 2);
  EXPECT_EQ(QuadField::rational().genus, 0.0);
  EXPECT_THROW(QuadField::from_discriminant(20), ValidationError);
  EXPECT_EQ(QuadField::from_discriminant(12).r1, 2);
  EXPECT_THROW(QuadField::from_discriminant(-16), ValidationError);
  EXPECT_THROW(QuadField::from_discriminant(3), ValidationError);
  EXPECT_EQ(QuadField::parse("Q").degree, 1);
  EXPECT_EQ(QuadField::parse("-23").disc, -23);
  EXPECT_THROW(QuadField::parse("x5"), ValidationError);
  EXPECT_THROW(QuadField::parse("5x"), ValidationError);
}

TEST(QuadField, FundamentalDiscriminantOracle) {
  // Independent definition: D is fundamental iff D is a discriminant that is
  // not f^2 times a smaller discriminant.
  auto disc = [](std::int64_t v) { return v != 0 && v != 1 && (((v % 4) + 4) % 4 <= 1); };
  for (std::int64_t D = -2000; D <= 2000; ++D) {
    bool fundamental = disc(D);
    for (std::int64_t f = 2; fundamental && f * f <= std::llabs(D); ++f)
      if (D % (f * f) == 0 && (disc(D / (f * f)) || D / (f * f) == 1))
        fundamental = false;
    ASSERT_EQ(is_fundamental_discriminant(D), fundamental) << D;
  }
}

TEST(SplittingType, Examples) {
  EXPECT_EQ(splitting_type(QuadField::from_discriminant(-4), 5), Splitting::Split);
  EXPECT_EQ(splitting_type(QuadField::from_discriminant(-4), 2), Splitting::Ramified);
  EXPECT_EQ(splitting_type(QuadField::from_discriminant(5), 2), Splitting::Inert);
  EXPECT_THROW(splitting_type(QuadField::rational(), 3), ValidationError);
}

TEST(PlaceTable, Examples) {
  const auto q = place_table(QuadField::rational(), 10);
  for (std::uint64_t n = 1; n <= 10; ++n)
    EXPECT_EQ(q.phi(n), (n == 2 || n == 3 || n == 5 || n == 7) ? 1u : 0u) << n;

  const auto gauss = place_table(QuadField::from_discriminant(-4), 10);
  EXPECT_EQ(gauss.phi(2), 1u);
  EXPECT_EQ(gauss.phi(5), 2u);
  EXPECT_EQ(gauss.phi(9), 1u);
  EXPECT_EQ(gauss.phi(3), 0u);
  EXPECT_EQ(gauss.phi(7), 0u);
  EXPECT_EQ(gauss.counts.size(), 3u);

  const auto golden = place_table(QuadField::from_discriminant(5), 5);
  EXPECT_EQ(golden.phi(4), 1u);
  EXPECT_EQ(golden.phi(5), 1u);
  EXPECT_EQ(golden.counts.size(), 2u);

  EXPECT_THROW(place_table(QuadField::rational(), 1), ValidationError);
}

TEST(PlaceTable, DegreeOverEachPrimeEqualsFieldDegree) {
  for (std::int64_t D : {-4, -3, -23, 5, 8, 13, -84, 1001 * 4 + 1}) {
    if (!is_fundamental_discriminant(D))
      continue;
    const auto k = QuadField::from_discriminant(D);
    const std::uint64_t x = 20'000;
    const auto t = place_table(k, x);
    for (std::uint64_t p : primes_up_to(141)) { // p^2 <= x
      // sum over places above p of the residue degree f, where NP = p^f
      const std::uint32_t deg = t.phi(p) * 1 + t.phi(p * p) * 2;
      const int chi = oracle::kronecker_at_prime(D, p);
      const std::uint32_t expect_places = chi == 1 ? 2 : 1;
      ASSERT_EQ(t.phi(p) + t.phi(p * p), expect_places) << D << " " << p;
      if (chi != 0)
        ASSERT_EQ(deg, 2u) << D << " " << p;
      else
        ASSERT_EQ(deg, 1u) << D << " " << p; // ramified: e = 2, f = 1
    }
  }
}

TEST(PlaceTable, MonotoneInBound) {
  const auto k = QuadField::from_discriminant(-23);
  const auto big = place_table(k, 50'000);
  for (std::uint64_t x1 : {2ull, 10ull, 97ull, 1000ull, 12'345ull}) {
    const auto small = place_table(k, x1);
    const auto cut = big.restricted(x1);
    ASSERT_EQ(small.counts.size(), cut.counts.size());
    for (std::size_t i = 0; i < small.counts.size(); ++i) {
      ASSERT_EQ(small.counts[i].q, cut.counts[i].q);
      ASSERT_EQ(small.counts[i].count, cut.counts[i].count);
    }
  }
}

TEST(ResidueKappa, Examples) {
  EXPECT_EQ(residue_kappa(QuadField::rational()), 1.0);
  EXPECT_NEAR(residue_kappa(QuadField::from_discriminant(-4)), std::numbers::pi / 4, 1e-14);
  EXPECT_NEAR(residue_kappa(QuadField::from_discriminant(5)), 0.430409, 1e-6);
  // 2 h log(eps)/sqrt 5 with h = 1, eps = golden ratio
  EXPECT_NEAR(residue_kappa(QuadField::from_discriminant(5)),
              2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::sqrt(5.0), 1e-12);
  EXPECT_THROW(residue_kappa(QuadField::from_discriminant(-4), ResidueOptions{3}), BudgetError);
}

TEST(ResidueKappa, PositiveForAllSmallDiscriminants) {
  for (std::int64_t D = -10'000; D <= 10'000; ++D) {
    if (!is_fundamental_discriminant(D))
      continue;
    ASSERT_GT(residue_kappa(QuadField::from_discriminant(D)), 0.0) << D;
  }
}

TEST(ResidueKappa, CharacterTableMatchesKronecker) {
  for (std::int64_t D : {-3, -4, -7, -8, -23, -84, 5, 8, 12 * 0 + 13, 940}) {
    if (!is_fundamental_discriminant(D))
      continue;
    const auto chi = character_table(D);
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(chi.size()); ++a)
      ASSERT_EQ(chi[a], kronecker(D, a)) << D << " " << a;
  }
}

TEST(ClassNumberImag, Examples) {
  EXPECT_EQ(class_number_imag(-4), 1);
  EXPECT_EQ(class_number_imag(-23), 3);
  EXPECT_EQ(class_number_imag(-3), 1);
  EXPECT_EQ(class_number_imag(-163), 1);
  EXPECT_EQ(class_number_imag(-84), 4);
  EXPECT_THROW(class_number_imag(5), ValidationError);
  EXPECT_THROW(class_number_imag(-12), ValidationError);
}

TEST(FundamentalUnit, Examples) {
  const auto u5 = fundamental_unit(5);
  EXPECT_EQ(u5.a, 1);
  EXPECT_EQ(u5.b, 1);
  EXPECT_EQ(u5.norm, -1);
  EXPECT_NEAR(u5.regulator, 0.481212, 1e-6);
  const auto u8 = fundamental_unit(8);
  EXPECT_NEAR(u8.epsilon, 1.0 + std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(u8.regulator, 0.881374, 1e-6);
  const auto u13 = fundamental_unit(13);
  EXPECT_EQ(u13.a, 3);
  EXPECT_EQ(u13.b, 1);
  EXPECT_NEAR(u13.regulator, 1.194763, 1e-6);
  EXPECT_THROW(fundamental_unit(-4), ValidationError);
  EXPECT_THROW(fundamental_unit(9), ValidationError);
  EXPECT_THROW(fundamental_unit(44, UnitOptions{1}), BudgetError);
  EXPECT_EQ(fundamental_unit(44).a, 20); // 10 + 3 sqrt 11
}

TEST(FundamentalUnit, MatchesBruteForcePellSearch) {
  // Oracle: the smallest b >= 1 with D b^2 +- 4 a perfect square gives eps.
  for (std::int64_t D = 5; D < 300; ++D) {
    if (!is_fundamental_discriminant(D))
      continue;
    std::int64_t found_a = 0, found_b = 0;
    for (std::int64_t b = 1; b < 2'000'000 && !found_b; ++b) {
      for (int s : {-4, 4}) {
        const std::int64_t v = D * b * b + s;
        auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
        if (v > 0 && r * r == v) {
          found_a = r;
          found_b = b;
          break;
        }
      }
    }
    if (!found_b)
      continue; // regulator too large for the naive search
    const auto u = fundamental_unit(D);
    EXPECT_EQ(u.b, found_b) << D;
    EXPECT_EQ(u.a, found_a) << D;
  }
}

TEST(ClassNumberFormula, Examples) {
  const auto c4 = class_number_formula_check(QuadField::from_discriminant(-4));
  EXPECT_NEAR(c4.kappa_analytic, std::numbers::pi / 4, 1e-12);
  EXPECT_LT(c4.abs_diff, 1e-12);
  EXPECT_EQ(c4.class_number, 1);

  const auto c23 = class_number_formula_check(QuadField::from_discriminant(-23));
  EXPECT_EQ(c23.class_number, 3);
  EXPECT_NEAR(c23.kappa_class_formula, 3 * 2 * std::numbers::pi / (2 * std::sqrt(23.0)), 1e-12);
  EXPECT_LT(c23.abs_diff, 1e-9);

  const auto c5 = class_number_formula_check(QuadField::from_discriminant(5));
  EXPECT_EQ(c5.class_number, 1);
  EXPECT_FALSE(c5.h_ambiguous);
  EXPECT_NEAR(c5.kappa_class_formula, 0.430409, 1e-6);
  EXPECT_LT(c5.abs_diff, 1e-9);

  EXPECT_THROW(class_number_formula_check(QuadField::rational()), ValidationError);
}

TEST(ClassNumberFormula, AgreementOverRanges) {
  for (std::int64_t D = -499; D < 0; ++D) {
    if (!is_fundamental_discriminant(D))
      continue;
    ASSERT_LT(class_number_formula_check(QuadField::from_discriminant(D)).abs_diff, 1e-9) << D;
  }
  for (std::int64_t D : {5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 56, 60, 61, 65, 69, 73, 76, 77,
                         85, 88, 89, 92, 93, 97, 101, 104, 105, 109, 113, 120, 124, 136, 140, 145, 156, 165, 172,
                         193, 221, 229, 257, 316, 401, 409, 445, 481, 497}) {
    if (!is_fundamental_discriminant(D))
      continue;
    const auto c = class_number_formula_check(QuadField::from_discriminant(D));
    ASSERT_FALSE(c.h_ambiguous) << D;
    ASSERT_LT(c.abs_diff, 1e-9) << D;
  }
  // h(Q(sqrt 10)) = 2 (D = 40), h(Q(sqrt 82)) = 4 (D = 328)
  EXPECT_EQ(class_number_formula_check(QuadField::from_discriminant(40)).class_number, 2);
  EXPECT_EQ(class_number_formula_check(QuadField::from_discriminant(328)).class_number, 4);
}

TEST(ClassNumberFormula, RoundingFlagsAmbiguity) {
  EXPECT_EQ(round_class_number(2.0000000001).h, 2);
  EXPECT_FALSE(round_class_number(2.0000000001).ambiguous);
  EXPECT_TRUE(round_class_number(1.3).ambiguous);
  // A wrong supplied h shows up as a large diff.
  EXPECT_GT(class_number_formula_check(QuadField::from_discriminant(5), 2).abs_diff, 0.4);
}
