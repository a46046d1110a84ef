// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// Selective lambda lifting.
//
// The pass walks the program in pre-order. At each `let` it hypothetically
// lifts the whole binding group, computes the group's required set (the
// variables every call site must now pass), and runs the rejection criteria.
// Lifted groups become top-level functions taking the required set ahead of
// their own parameters; every occurrence of a lifted binder is rewritten to
// an application to its required set.

#ifndef LIFTLAB_LIFTER_H_
#define LIFTLAB_LIFTER_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liftlab/analysis.h"
#include "liftlab/skeleton.h"

namespace liftlab {

/// Maps lifted binders to their required sets.
struct Expander {
  std::map<Name, VarSet> required;
  VarSet top_level;

  bool contains(const Name& n) const { return required.count(n) != 0; }
};

/// Replaces each lifted binder in `vs` by its required set.
VarSet expand(const Expander& a, const VarSet& vs);

/// Extends `a` with `group`, every member mapping to the union of the
/// expanded free variables of all members minus the members themselves and
/// top-level names.
Expander add_required_sets(const BindGroup& group, const Expander& a);

struct LiftConfig {
  std::size_t max_arity_nonrec = 5;
  std::size_t max_arity_rec = 5;
  bool check_closure_growth = true;
  bool allow_unknown_calls = false;
  /// Lift binders with argument or unapplied occurrences anyway, wrapping
  /// each such occurrence in an eta-expanded closure.
  bool allow_arg_occurrences = false;
  /// When set, lift exactly the groups whose first binder is listed,
  /// ignoring the heuristics. Groups that cannot be lifted soundly (thunks,
  /// argument occurrences without wrapping) are never lifted.
  std::optional<std::set<Name>> forced;
};

enum class Reason : std::uint8_t {
  kLifted,
  kArgOccurrence,     // C1
  kClosureGrowth,     // C2
  kCallingConvention, // C3
  kKnownCalls,        // C4
  kUpdatable,         // C5
  kNotSelected,       // excluded from a forced subset
};

std::string_view reason_name(Reason r);
/// "C1".."C5", or empty for kLifted / kNotSelected.
std::string_view reason_criterion(Reason r);

struct Decision {
  std::size_t site = 0;  // pre-order index of the let
  std::vector<Name> binders;
  bool recursive = false;
  bool lifted = false;
  Reason reason = Reason::kLifted;
  /// C3: resulting arity. C4: the offending variable.
  std::string detail;
  VarSet required_set;
  /// Closure growth minus closure savings for lifting this group.
  Growth predicted_net_words;
};

struct LiftResult {
  Program program;
  std::vector<Decision> decisions;
};

/// Lifts the program. Input must be validated, freshened and split into
/// strongly connected binding groups.
LiftResult lift_program(const Program& p, const LiftConfig& cfg = {});

/// The heuristic verdict for one group given the expander extended with it.
/// `body` is the let body; `before` is the expander without the group.
Decision decide(const BindGroup& group, const Expander& before, const Expander& after,
                const Expr& body, const OccFacts& facts, const LiftConfig& cfg);

/// Net allocation change predicted for lifting `group` out of
/// `let group in body`: growth of surrounding closures minus the words its
/// own closures no longer occupy.
Growth predicted_net_words(const BindGroup& group, const Expander& before,
                           const Expander& after, const Expr& body);

/// Sites (first binder of each group) that may be lifted without breaking
/// ANF: no thunks and no argument or unapplied occurrences.
std::vector<Name> liftable_sites(const Program& p);

}  // namespace liftlab

#endif  // LIFTLAB_LIFTER_H_
