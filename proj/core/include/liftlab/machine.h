// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// A small-step abstract machine with heap-allocation accounting.
//
// Every let-bound lambda or thunk allocates one closure of
// 1 + (captured variables) words. Captured variables exclude top-level names
// and the binders of the closure's own group. Top-level functions are static
// and cost nothing; zero-arity top-level bindings are shared, updatable
// constants. Arguments are passed unevaluated and thunks are updated in
// place after their first evaluation.

#ifndef LIFTLAB_MACHINE_H_
#define LIFTLAB_MACHINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "liftlab/syntax.h"

namespace liftlab {

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

struct BinderStats {
  std::uint64_t allocations = 0;
  /// Body entries summed over all closures allocated for the binder.
  std::uint64_t entries = 0;
  std::uint64_t words = 0;
  /// Fewest and most entries observed for a single allocated closure.
  std::uint64_t min_entries_per_alloc = 0;
  std::uint64_t max_entries_per_alloc = 0;
};

struct AllocStats {
  std::uint64_t words = 0;
  std::uint64_t closures = 0;
  std::uint64_t steps = 0;
  std::map<Name, BinderStats> per_binder;
};

enum class EvalErrorKind : std::uint8_t {
  kOutOfFuel,
  kUnboundVariable,
  kArityMismatch,
  kBlackholeLoop,
  kDivideByZero,
};

std::string_view eval_error_name(EvalErrorKind k);

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& detail);
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

struct EvalResult {
  /// Set when the program evaluates to an integer.
  std::optional<std::int64_t> integer;
  /// The integer in decimal, or "<function>".
  std::string rendered;
  AllocStats stats;
};

/// Evaluates `main`. Throws EvalError.
EvalResult eval(const Program& p, std::uint64_t fuel = kDefaultFuel);

/// words(lifted) - words(original).
std::int64_t compare_alloc(const Program& original, const Program& lifted,
                           std::uint64_t fuel = kDefaultFuel);

class SubsetTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleEntry {
  std::set<Name> subset;
  std::uint64_t words = 0;
  std::string rendered;
};

struct OracleResult {
  std::vector<Name> sites;
  /// One entry per subset of `sites`, in bitmask order.
  std::vector<OracleEntry> entries;

  const OracleEntry& best() const;
};

/// Lifts every subset of the liftable sites and measures each variant.
/// Throws SubsetTooLarge when there are more than `max_groups` sites.
OracleResult oracle_enumerate(const Program& p, std::uint64_t fuel = kDefaultFuel,
                              std::size_t max_groups = 4);

}  // namespace liftlab

#endif  // LIFTLAB_MACHINE_H_
