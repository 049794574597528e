// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#include "mertens/exactmath/analytic.hpp"
#include "mertens/exactmath/bigrational.hpp"
#include "mertens/exactmath/finite_field.hpp"
#include "mertens/exactmath/kronecker.hpp"
#include "mertens/exactmath/prime_sieve.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace mertens;

TEST(BigRational, SumMatchesCrossMultiplication) {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000'000, 1'000'000'000);
  std::uniform_int_distribution<std::int64_t> den(1, 1'000'000'000);
  for (int i = 0; i < 10'000; ++i) {
    const std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const BigRational lhs = BigRational(a, b) + BigRational(c, d);
    BigInt n = BigInt(a) * d + BigInt(c) * b;
    BigInt m = BigInt(b) * d;
    const BigInt g = gcd(n, m);
    if (g != 0) {
      n /= g;
      m /= g;
    }
    ASSERT_EQ(numerator(lhs), n);
    ASSERT_EQ(denominator(lhs), m);
    ASSERT_GT(denominator(lhs), 0);
  }
}

TEST(BigRational, ConversionSurvivesHugeTerms) {
  // prod_{p <= 10^4} (1 - 1/p) has ~14000-bit numerator and denominator.
  BigRational prod = 1;
  long double logsum = 0;
  for (auto p : primes_up_to(10'000)) {
    prod *= BigRational(p - 1, p);
    logsum += std::log1p(-1.0L / p);
  }
  EXPECT_NEAR(static_cast<double>(to_long_double(prod)), std::exp(static_cast<double>(logsum)), 1e-15);
  EXPECT_NEAR(static_cast<double>(log_rational(prod)), static_cast<double>(logsum), 1e-12);
}

TEST(Kronecker, SpecExamples) {
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(5, 2), -1);
  for (std::int64_t D : {-4, -3, 5, 8, 12, 13, -23, 1, 0})
    EXPECT_EQ(kronecker(D, 1), 1);
}

TEST(Kronecker, RejectsBadDiscriminant) {
  EXPECT_THROW(kronecker(2, 3), ValidationError);
  EXPECT_THROW(kronecker(-5, 7), ValidationError);
  EXPECT_THROW(kronecker(5, 0), ValidationError);
}

TEST(Kronecker, AgreesWithEulerCriterionAtPrimes) {
  for (std::int64_t D = -400; D <= 400; ++D) {
    if (!is_discriminant_residue(D))
      continue;
    for (std::uint64_t p : primes_up_to(200))
      ASSERT_EQ(kronecker(D, static_cast<std::int64_t>(p)), oracle::kronecker_at_prime(D, p)) << D << " " << p;
  }
}

TEST(Kronecker, CompletelyMultiplicative) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dd(-5000, 5000), nn(1, 100'000);
  int checked = 0;
  while (checked < 5000) {
    std::int64_t D = dd(rng);
    if (!is_discriminant_residue(D) || D == 0)
      continue;
    const std::int64_t m = nn(rng), n = nn(rng);
    if (std::gcd(m, 2 * D) != 1 || std::gcd(n, 2 * D) != 1)
      continue;
    ASSERT_EQ(kronecker(D, m * n), kronecker(D, m) * kronecker(D, n));
    ++checked;
  }
}

TEST(PrimeSieve, AgreesWithTrialDivision) {
  PrimeSieve sieve(100'000);
  for (std::uint64_t n = 0; n <= 100'000; ++n)
    ASSERT_EQ(sieve.is_prime(n), oracle::is_prime_trial(n)) << n;
  EXPECT_THROW(sieve.is_prime(100'001), ValidationError);
}

TEST(PrimeSieve, SegmentedMatchesPlain) {
  const auto plain = PrimeSieve(2'000'003).primes();
  std::vector<std::uint64_t> seg;
  for_each_prime(2'000'003, [&](std::uint64_t p) { seg.push_back(p); }, 4096);
  EXPECT_EQ(plain, seg);
  EXPECT_EQ(primes_up_to(100).size(), 25u);
  EXPECT_TRUE(primes_up_to(1).empty());
}

TEST(PrimeSieve, MillerRabinAgreesWithSieve) {
  PrimeSieve sieve(200'000);
  for (std::uint64_t n = 0; n <= 200'000; ++n)
    ASSERT_EQ(is_prime_u64(n), sieve.is_prime(n)) << n;
  EXPECT_TRUE(is_prime_u64(1'000'000'007ull));
  EXPECT_FALSE(is_prime_u64(1'000'000'007ull * 3));
}

TEST(Analytic, EulerGamma) {
  EXPECT_DOUBLE_EQ(euler_gamma(), 0.5772156649015329);
  EXPECT_GT(euler_gamma(), 0.5);
  EXPECT_LT(euler_gamma(), 0.6);
  // S_1(1) - log 1 - gamma
  EXPECT_NEAR(1.0 - euler_gamma(), 0.4228, 1e-4);
}

TEST(Analytic, EulerGammaHarmonicLimit) {
  const std::uint64_t N = 100'000'000;
  KahanSum h;
  for (std::uint64_t k = N; k >= 1; --k)
    h += 1.0L / k;
  // H_N - log N = gamma + 1/(2N) - 1/(12N^2) + ...
  const long double est = h.value() - std::log(static_cast<long double>(N)) - 1.0L / (2.0L * N);
  EXPECT_NEAR(static_cast<double>(est), euler_gamma(), 1e-14);
}

TEST(Analytic, LiExamples) {
  EXPECT_EQ(li(2.0), 0.0);
  EXPECT_NEAR(li(10.0), 5.12, 0.005);
  EXPECT_NEAR(li(100.0), 29.08, 0.005);
  EXPECT_THROW(li(1.5), ValidationError);
}

TEST(Analytic, LiMatchesSeriesOracle) {
  for (double x : {2.5, 3.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e7, 1e9}) {
    const double ref = static_cast<double>(oracle::li_series(x));
    EXPECT_NEAR(li(x), ref, 1e-10 * ref) << x;
  }
}

TEST(KahanSum, RecoversSmallTerms) {
  KahanSum s;
  long double naive = 1.0L;
  s += 1.0L;
  for (int i = 0; i < 1000; ++i) {
    s += 1e-20L;
    naive += 1e-20L;
  }
  EXPECT_EQ(naive, 1.0L);
  EXPECT_NEAR(static_cast<double>((s.value() - 1.0L) * 1e17L), 1.0, 0.01);
}

namespace {

// Brute-force irreducibility over F_p for degree <= 3: no roots.
bool no_roots(const std::vector<std::uint64_t> &m, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = m.size(); i-- > 0;)
      v = (v * x + m[i]) % p;
    if (v == 0)
      return false;
  }
  return true;
}

} // namespace

TEST(GaloisField, ModulusIsFirstIrreducibleInOrder) {
  EXPECT_EQ(GaloisField::make(2, 2)->modulus(), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(GaloisField::make(2, 3)->modulus(), (std::vector<std::uint64_t>{1, 1, 0, 1}));
  EXPECT_EQ(GaloisField::make(3, 2)->modulus(), (std::vector<std::uint64_t>{1, 0, 1}));
  EXPECT_EQ(GaloisField::make(2, 4)->modulus(), (std::vector<std::uint64_t>{1, 1, 0, 0, 1}));
  // Oracle: walk candidates in the documented order with the root test (degree <= 3).
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (unsigned k : {2u, 3u}) {
      std::vector<std::uint64_t> expect;
      std::uint64_t q = 1;
      for (unsigned i = 0; i < k; ++i)
        q *= p;
      for (std::uint64_t c = 0; c < q && expect.empty(); ++c) {
        std::vector<std::uint64_t> m(k + 1, 0);
        std::uint64_t v = c;
        for (unsigned i = 0; i < k; ++i) {
          m[i] = v % p;
          v /= p;
        }
        m[k] = 1;
        if (no_roots(m, p))
          expect = m;
      }
      EXPECT_EQ(GaloisField::make(p, k)->modulus(), expect) << p << "^" << k;
    }
  }
}

TEST(GaloisField, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(99);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (unsigned k = 1; k <= 4; ++k) {
      auto F = GaloisField::make(p, k);
      const std::uint64_t q = F->order();
      std::uniform_int_distribution<std::uint64_t> pick(1, q - 1);
      for (int i = 0; i < 200; ++i) {
        FqElem a(F, static_cast<GaloisField::Code>(pick(rng)));
        FqElem b(F, static_cast<GaloisField::Code>(pick(rng)));
        ASSERT_EQ(a.pow(q - 1).code(), GaloisField::one());
        ASSERT_EQ((a * a.inverse()).code(), GaloisField::one());
        ASSERT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
        ASSERT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
        ASSERT_EQ(a - a, FqElem(F, 0));
        ASSERT_EQ((a + b) * b, a * b + b * b);
      }
    }
  }
}

TEST(GaloisField, TablesAgreeWithSchoolbookMultiplication) {
  auto with = GaloisField::make(3, 4);
  auto without = GaloisField::make(3, 4, 0);
  ASSERT_TRUE(with->has_tables());
  ASSERT_FALSE(without->has_tables());
  for (GaloisField::Code a = 0; a < 81; ++a)
    for (GaloisField::Code b = 0; b < 81; ++b)
      ASSERT_EQ(with->mul(a, b), without->mul(a, b));
  for (GaloisField::Code a = 1; a < 81; ++a) {
    ASSERT_EQ(with->quadratic_character(a), without->quadratic_character(a));
    ASSERT_EQ(with->inv(a), without->inv(a));
  }
}

TEST(GaloisField, CoordinatesRoundTrip) {
  auto F = GaloisField::make(5, 3);
  auto e = FqElem::from_coeffs(F, {1, -1, 7});
  EXPECT_EQ(e.coeffs(), (std::vector<std::uint64_t>{1, 4, 2}));
  EXPECT_THROW(FqElem::from_coeffs(F, {1, 2, 3, 4}), ValidationError);
  EXPECT_THROW(GaloisField::make(4, 1), ValidationError);
}

TEST(GaloisField, EmbeddingIsAHomomorphism) {
  for (auto [p, k, K] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{2, 2, 4}, {3, 2, 6}, {5, 1, 3}, {2, 3, 6}}) {
    auto small = GaloisField::make(p, k);
    auto big = GaloisField::make(p, K);
    const auto emb = embedding(*small, *big);
    for (GaloisField::Code a = 0; a < small->order(); ++a)
      for (GaloisField::Code b = 0; b < small->order(); ++b) {
        ASSERT_EQ(emb[small->add(a, b)], big->add(emb[a], emb[b]));
        ASSERT_EQ(emb[small->mul(a, b)], big->mul(emb[a], emb[b]));
      }
  }
}

TEST(FieldPoly, DistinctRootCountMatchesEnumeration) {
  auto F = GaloisField::make(3, 2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<GaloisField::Code> c(0, 8);
  for (int trial = 0; trial < 300; ++trial) {
    fq_poly::Poly a(1 + trial % 6);
    for (auto &v : a)
      v = c(rng);
    a.push_back(1 + trial % 8);
    std::size_t brute = 0;
    for (GaloisField::Code x = 0; x < 9; ++x)
      if (fq_poly::eval(a, x, *F) == 0)
        ++brute;
    ASSERT_EQ(fq_poly::distinct_root_count(a, *F), brute);
  }
}
