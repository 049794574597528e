// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace mertens {

inline bool is_discriminant_residue(std::int64_t D) {
  const std::int64_t r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

/// Kronecker symbol (D/n) for a discriminant-shaped D (D = 0, 1 mod 4) and n >= 1.
inline int kronecker(std::int64_t D, std::int64_t n) {
  if (!is_discriminant_residue(D))
    throw ValidationError("kronecker: D = " + std::to_string(D) + " is not 0 or 1 mod 4");
  if (n < 1)
    throw ValidationError("kronecker: n must be positive");

  // (D/2) from the mod-8 rule, then Jacobi reciprocity for the odd part.
  int result = 1;
  std::int64_t a = D;
  std::int64_t b = n;
  while ((b & 1) == 0) {
    b >>= 1;
    if ((a & 1) == 0)
      return 0;
    const std::int64_t r8 = ((a % 8) + 8) % 8;
    if (r8 == 3 || r8 == 5)
      result = -result;
  }
  // b odd positive: Jacobi symbol (a/b).
  a %= b;
  if (a < 0)
    a += b;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t r8 = b % 8;
      if (r8 == 3 || r8 == 5)
        result = -result;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3)
      result = -result;
    a %= b;
  }
  return b == 1 ? result : 0;
}

} // namespace mertens
