// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mertens {

/// Input or data that fails a mathematical or structural check
/// (non-fundamental discriminant, inconsistent point counts, broken identity).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration/computation ceiling would be exceeded.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const std::string &msg) {
  if (!cond)
    throw ValidationError(msg);
}
} // namespace detail

} // namespace mertens
