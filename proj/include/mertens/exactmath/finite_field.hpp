// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mertens/error.hpp"
#include "mertens/exactmath/prime_sieve.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mertens {

namespace fp_poly {

// Dense polynomials over F_p, coefficients low -> high, p < 2^31.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1)
      r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline Poly mod(Poly a, const Poly &m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t s = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[s + i] = (a[s + i] + p - c * m[i] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly &a, const Poly &b, const Poly &m, std::uint64_t p) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod(std::move(r), m, p);
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(p^e) mod m by e successive p-th powers.
inline Poly frobenius_power_of_x(const Poly &m, std::uint64_t p, unsigned e) {
  Poly x = mod(Poly{0, 1}, m, p);
  for (unsigned i = 0; i < e; ++i) {
    Poly base = x, acc{1};
    std::uint64_t n = p;
    while (n) {
      if (n & 1)
        acc = mulmod(acc, base, m, p);
      base = mulmod(base, base, m, p);
      n >>= 1;
    }
    x = acc;
  }
  return x;
}

/// Rabin irreducibility test for a monic polynomial of degree k over F_p.
inline bool is_irreducible(const Poly &m, std::uint64_t p) {
  const unsigned k = static_cast<unsigned>(m.size() - 1);
  if (k == 1)
    return true;
  Poly xk = frobenius_power_of_x(m, p, k);
  Poly x = mod(Poly{0, 1}, m, p);
  xk.resize(std::max(xk.size(), x.size()), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    xk[i] = (xk[i] + p - x[i]) % p;
  trim(xk);
  if (!xk.empty())
    return false;
  for (std::uint64_t l : prime_factors(k)) {
    Poly h = frobenius_power_of_x(m, p, static_cast<unsigned>(k / l));
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (gcd(m, h, p).size() != 1)
      return false;
  }
  return true;
}

} // namespace fp_poly

/// The field F_{p^k} = F_p[x]/(m(x)), m the first monic irreducible of degree
/// k when the low coefficients (c_0, ..., c_{k-1}) are ordered as the base-p
/// number sum c_i p^i (i.e. lexicographically from c_{k-1} down to c_0).
///
/// Elements are handled as integer codes sum c_i p^i of their coordinate
/// vectors, which makes codes reproducible for a given (p, k).  For orders up
/// to `table_limit` exp/log tables make multiplication a lookup.
class GaloisField {
public:
  using Code = std::uint32_t;

  static constexpr std::uint64_t default_table_limit = 1u << 24;

  static std::shared_ptr<const GaloisField> make(std::uint64_t p, unsigned k,
                                                 std::uint64_t table_limit = default_table_limit) {
    return std::shared_ptr<const GaloisField>(new GaloisField(p, k, table_limit));
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  std::uint64_t order() const noexcept { return q_; }
  const std::vector<std::uint64_t> &modulus() const noexcept { return modulus_; }
  bool has_tables() const noexcept { return !log_.empty(); }
  Code primitive_element() const noexcept { return generator_; }

  static constexpr Code zero() noexcept { return 0; }
  static constexpr Code one() noexcept { return 1; }

  std::vector<std::uint64_t> digits(Code a) const {
    std::vector<std::uint64_t> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a = static_cast<Code>(a / p_);
    }
    return d;
  }

  Code encode(const std::vector<std::uint64_t> &d) const {
    std::uint64_t c = 0;
    for (std::size_t i = d.size(); i-- > 0;)
      c = c * p_ + (d[i] % p_);
    return static_cast<Code>(c);
  }

  Code from_int(std::int64_t v) const {
    const auto pp = static_cast<std::int64_t>(p_);
    return static_cast<Code>(((v % pp) + pp) % pp);
  }

  Code add(Code a, Code b) const noexcept {
    if (p_ == 2)
      return a ^ b;
    if (k_ == 1)
      return static_cast<Code>((std::uint64_t(a) + b) % p_);
    std::uint64_t out = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint64_t s = (a % p_ + b % p_) % p_;
      out += s * scale;
      scale *= p_;
      a = static_cast<Code>(a / p_);
      b = static_cast<Code>(b / p_);
    }
    return static_cast<Code>(out);
  }

  Code neg(Code a) const noexcept {
    if (p_ == 2)
      return a;
    std::uint64_t out = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint64_t s = (p_ - a % p_) % p_;
      out += s * scale;
      scale *= p_;
      a = static_cast<Code>(a / p_);
    }
    return static_cast<Code>(out);
  }

  Code sub(Code a, Code b) const noexcept { return add(a, neg(b)); }

  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0)
      return 0;
    if (has_tables()) {
      std::uint64_t e = std::uint64_t(log_[a]) + log_[b];
      if (e >= q_ - 1)
        e -= q_ - 1;
      return exp_[e];
    }
    return mul_slow(a, b);
  }

  Code pow(Code a, std::uint64_t e) const noexcept {
    if (e == 0)
      return 1;
    if (a == 0)
      return 0;
    if (has_tables())
      return exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * e) % (q_ - 1))];
    Code r = 1;
    while (e) {
      if (e & 1)
        r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  }

  Code inv(Code a) const {
    if (a == 0)
      throw ValidationError("GaloisField: inverse of zero");
    if (has_tables())
      return exp_[log_[a] == 0 ? 0 : q_ - 1 - log_[a]];
    return pow(a, q_ - 2);
  }

  Code frobenius(Code a) const noexcept { return pow(a, p_); }

  /// Discrete log w.r.t. primitive_element(); requires tables and a != 0.
  std::uint32_t log(Code a) const { return log_.at(a); }

  /// Quadratic character on F_q (odd q): 0, +1 or -1.
  int quadratic_character(Code a) const {
    if (p_ == 2)
      throw ValidationError("quadratic_character: characteristic 2");
    if (a == 0)
      return 0;
    if (has_tables())
      return (log_[a] & 1u) ? -1 : 1;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
  }

  Code mul_slow(Code a, Code b) const noexcept {
    const auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> r(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
      if (!da[i])
        continue;
      for (unsigned j = 0; j < k_; ++j)
        r[i + j] = (r[i + j] + da[i] * db[j]) % p_;
    }
    for (std::size_t t = r.size(); t-- > k_;) {
      const std::uint64_t c = r[t];
      if (!c)
        continue;
      for (unsigned i = 0; i <= k_; ++i)
        r[t - k_ + i] = (r[t - k_ + i] + p_ - c * modulus_[i] % p_) % p_;
    }
    r.resize(k_);
    return encode(r);
  }

private:
  GaloisField(std::uint64_t p, unsigned k, std::uint64_t table_limit) : p_(p), k_(k) {
    if (p < 2 || !is_prime_u64(p))
      throw ValidationError("GaloisField: p = " + std::to_string(p) + " is not prime");
    if (k < 1)
      throw ValidationError("GaloisField: extension degree must be >= 1");
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > 0xFFFFFFFFull)
        throw BudgetError("GaloisField: p^k exceeds the 32-bit element code range");
    }
    q_ = static_cast<std::uint64_t>(q);
    pick_modulus();
    find_generator();
    if (q_ <= table_limit)
      build_tables();
  }

  void pick_modulus() {
    const std::uint64_t count = q_;
    for (std::uint64_t c = 0; c < count; ++c) {
      fp_poly::Poly m(k_ + 1, 0);
      std::uint64_t v = c;
      for (unsigned i = 0; i < k_; ++i) {
        m[i] = v % p_;
        v /= p_;
      }
      m[k_] = 1;
      if (k_ > 1 && m[0] == 0)
        continue;
      if (fp_poly::is_irreducible(m, p_)) {
        modulus_ = m;
        return;
      }
    }
    throw ValidationError("GaloisField: no irreducible polynomial found");
  }

  void find_generator() {
    if (q_ == 2) {
      generator_ = 1;
      return;
    }
    const auto factors = prime_factors(q_ - 1);
    for (std::uint64_t g = 1; g < q_; ++g) {
      bool ok = true;
      for (std::uint64_t l : factors) {
        if (pow(static_cast<Code>(g), (q_ - 1) / l) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        generator_ = static_cast<Code>(g);
        return;
      }
    }
    throw ValidationError("GaloisField: no primitive element");
  }

  void build_tables() {
    std::vector<Code> ex(q_ - 1);
    std::vector<std::uint32_t> lg(q_, 0);
    Code x = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      ex[i] = x;
      lg[x] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, generator_);
    }
    exp_ = std::move(ex);
    log_ = std::move(lg);
  }

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> modulus_;
  Code generator_ = 1;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Value-type element of F_{p^k}.
class FqElem {
public:
  FqElem(FieldPtr field, GaloisField::Code code) : field_(std::move(field)), code_(code) {}

  static FqElem from_coeffs(FieldPtr field, const std::vector<std::int64_t> &coeffs) {
    detail::require(coeffs.size() <= field->degree(), "FqElem: too many coordinates for the field degree");
    std::vector<std::uint64_t> d(field->degree(), 0);
    const auto p = static_cast<std::int64_t>(field->characteristic());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      d[i] = static_cast<std::uint64_t>(((coeffs[i] % p) + p) % p);
    const auto code = field->encode(d);
    return FqElem(std::move(field), code);
  }

  const FieldPtr &field() const noexcept { return field_; }
  GaloisField::Code code() const noexcept { return code_; }
  std::vector<std::uint64_t> coeffs() const { return field_->digits(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FqElem operator+(const FqElem &o) const { return {field_, field_->add(code_, o.code_)}; }
  FqElem operator-(const FqElem &o) const { return {field_, field_->sub(code_, o.code_)}; }
  FqElem operator-() const { return {field_, field_->neg(code_)}; }
  FqElem operator*(const FqElem &o) const { return {field_, field_->mul(code_, o.code_)}; }
  FqElem operator/(const FqElem &o) const { return {field_, field_->mul(code_, field_->inv(o.code_))}; }
  FqElem pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }
  FqElem inverse() const { return {field_, field_->inv(code_)}; }
  FqElem frobenius() const { return {field_, field_->frobenius(code_)}; }

  bool operator==(const FqElem &o) const noexcept { return code_ == o.code_; }

private:
  FieldPtr field_;
  GaloisField::Code code_;
};

/// Field embedding F_{p^k} -> F_{p^K} (k | K) sending x to the root of the
/// small modulus with the smallest code; returned as a code table.
inline std::vector<GaloisField::Code> embedding(const GaloisField &small, const GaloisField &big) {
  detail::require(small.characteristic() == big.characteristic() && big.degree() % small.degree() == 0,
                  "embedding: F_{p^k} does not embed in the target field");
  using Code = GaloisField::Code;
  const auto &m = small.modulus();
  auto eval = [&](Code t) {
    Code v = 0;
    for (std::size_t i = m.size(); i-- > 0;)
      v = big.add(big.mul(v, t), big.from_int(static_cast<std::int64_t>(m[i])));
    return v;
  };
  const std::uint64_t sub_order = small.order();
  // Roots of m lie in the subfield of order p^k: {0} and powers of h.
  const Code h = big.pow(big.primitive_element(), (big.order() - 1) / (sub_order - 1));
  Code best = 0;
  bool found = false;
  if (eval(0) == 0) {
    best = 0;
    found = true;
  }
  Code t = 1;
  for (std::uint64_t j = 0; j + 1 < sub_order; ++j) {
    if (eval(t) == 0 && (!found || t < best)) {
      best = t;
      found = true;
    }
    t = big.mul(t, h);
  }
  detail::require(found, "embedding: modulus has no root in the target field");

  std::vector<Code> table(sub_order);
  for (std::uint64_t c = 0; c < sub_order; ++c) {
    const auto d = small.digits(static_cast<Code>(c));
    Code v = 0;
    for (std::size_t i = d.size(); i-- > 0;)
      v = big.add(big.mul(v, best), big.from_int(static_cast<std::int64_t>(d[i])));
    table[c] = v;
  }
  return table;
}

/// Dense polynomials over a GaloisField, coefficients low -> high.
namespace fq_poly {

using Code = GaloisField::Code;
using Poly = std::vector<Code>;

inline void trim(Poly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline Poly mod(Poly a, const Poly &m, const GaloisField &F) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Code lead_inv = F.inv(m.back());
  while (a.size() > dm) {
    const Code c = F.mul(a.back(), lead_inv);
    const std::size_t s = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[s + i] = F.sub(a[s + i], F.mul(c, m[i]));
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly &a, const Poly &b, const Poly &m, const GaloisField &F) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return mod(std::move(r), m, F);
}

inline Poly gcd(Poly a, Poly b, const GaloisField &F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly derivative(const Poly &a, const GaloisField &F) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) {
    Code c = 0;
    const auto times = static_cast<std::uint64_t>(i % F.characteristic());
    for (std::uint64_t t = 0; t < times; ++t)
      c = F.add(c, a[i]);
    d.push_back(c);
  }
  trim(d);
  return d;
}

inline Code eval(const Poly &a, Code x, const GaloisField &F) {
  Code v = 0;
  for (std::size_t i = a.size(); i-- > 0;)
    v = F.add(F.mul(v, x), a[i]);
  return v;
}

/// Number of distinct roots in F of a nonzero polynomial: deg gcd(a, y^q - y).
inline std::size_t distinct_root_count(Poly a, const GaloisField &F) {
  trim(a);
  detail::require(!a.empty(), "distinct_root_count: zero polynomial");
  if (a.size() == 1)
    return 0;
  if (a.size() == 2)
    return 1;
  // y^q mod a by square-and-multiply.
  Poly base = mod(Poly{0, 1}, a, F), acc{1};
  std::uint64_t e = F.order();
  while (e) {
    if (e & 1)
      acc = mulmod(acc, base, a, F);
    e >>= 1;
    if (e)
      base = mulmod(base, base, a, F);
  }
  acc.resize(std::max<std::size_t>(acc.size(), 2), 0);
  acc[1] = F.sub(acc[1], 1);
  trim(acc);
  if (acc.empty())
    return a.size() - 1;
  return gcd(a, acc, F).size() - 1;
}

} // namespace fq_poly

} // namespace mertens
