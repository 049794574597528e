// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace mertens {

/// Plain sieve of Eratosthenes over [0, limit]; read-only after construction.
class PrimeSieve {
public:
  explicit PrimeSieve(std::uint64_t limit) : limit_(limit), flags_(limit + 1, 1) {
    flags_[0] = 0;
    if (limit >= 1)
      flags_[1] = 0;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
      if (!flags_[i])
        continue;
      for (std::uint64_t j = i * i; j <= limit; j += i)
        flags_[j] = 0;
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const {
    detail::require(n <= limit_, "PrimeSieve: query beyond sieve limit");
    return flags_[n] != 0;
  }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit_; ++n)
      if (flags_[n])
        out.push_back(n);
    return out;
  }

private:
  std::uint64_t limit_;
  std::vector<std::uint8_t> flags_;
};

/// Streams every prime p <= limit, in increasing order, through `fn`.
/// Memory is O(sqrt(limit) + segment) so limits well past 10^7 are fine.
template <typename Fn>
void for_each_prime(std::uint64_t limit, Fn &&fn, std::uint64_t segment = 1u << 18) {
  if (limit < 2)
    return;
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit)
    --root;
  while ((root + 1) * (root + 1) <= limit)
    ++root;
  const auto base = PrimeSieve(root).primes();

  std::vector<std::uint8_t> seg(segment);
  for (std::uint64_t lo = 2; lo <= limit; lo += segment) {
    const std::uint64_t hi = std::min(limit, lo + segment - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > hi)
        break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p)
        seg[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (seg[n - lo])
        fn(n);
  }
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for_each_prime(limit, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

/// Smallest-prime-factor table over [0, limit] (spf[0] = spf[1] = 0).
inline std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = std::uint64_t(p) * i;
      if (p > spf[i] || m > limit)
        break;
      spf[m] = p;
    }
  }
  return spf;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0)
      return n == p;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1)
        r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

/// Distinct prime factors by trial division.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    out.push_back(p);
    while (n % p == 0)
      n /= p;
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

} // namespace mertens
