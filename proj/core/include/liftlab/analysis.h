// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// Static facts about programs: free variables, occurrence facts for let-bound
// binders, strongly-connected splitting of binding groups and cardinality
// lookup.

#ifndef LIFTLAB_ANALYSIS_H_
#define LIFTLAB_ANALYSIS_H_

#include <map>
#include <set>

#include "liftlab/syntax.h"

namespace liftlab {

/// Ordered set of variable names; iteration order is lexicographic.
using VarSet = std::set<Name>;

VarSet free_vars(const Expr& e);
VarSet free_vars(const Rhs& rhs);

VarSet top_level_names(const Program& p);

/// `vs` minus every element of `drop`.
VarSet set_minus(const VarSet& vs, const VarSet& drop);
VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_intersection(const VarSet& a, const VarSet& b);

/// Variables a closure for `rhs` would capture when it is allocated as a
/// member of `group`: its free variables minus top-level names and minus the
/// group's own binders (the group shares one environment).
VarSet closure_vars(const Rhs& rhs, const BindGroup& group, const VarSet& top_level);

struct BinderFacts {
  /// Appears as an argument of an application or primitive operation.
  bool occurs_as_argument = false;
  /// Appears as a bare atom expression (a result value or case scrutinee)
  /// rather than at the head of an application.
  bool occurs_unapplied = false;
  /// Bound to a lambda.
  bool is_known_function = false;
  std::size_t arity = 0;
  bool all_occurrences_saturated_calls = true;
};

/// Facts for every let-bound binder of the program.
using OccFacts = std::map<Name, BinderFacts>;

OccFacts occurrence_facts(const Program& p);

/// Splits every binding group into the strongly connected components of its
/// internal reference graph. Components are emitted as nested lets with
/// dependencies outermost; a component is recursive iff it is a cycle or has
/// a self reference.
Program split_groups(const Program& p);
ExprPtr split_groups(const ExprPtr& e);

/// Entry bounds of a RHS: the annotation for lambdas, {0,1} for thunks.
Cardinality cardinality(const Rhs& rhs);

}  // namespace liftlab

#endif  // LIFTLAB_ANALYSIS_H_
