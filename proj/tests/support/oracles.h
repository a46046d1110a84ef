// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used to check the library.

#ifndef LIFTLAB_TESTS_SUPPORT_ORACLES_H_
#define LIFTLAB_TESTS_SUPPORT_ORACLES_H_

#include <string>
#include <vector>

#include "liftlab/analysis.h"
#include "liftlab/lifter.h"
#include "liftlab/machine.h"

namespace liftlab::testing {

/// Free variables by substitution: `v` is free in `e` iff replacing the free
/// occurrences of `v` with a marker leaves the marker somewhere in `e`.
VarSet naive_free_vars(const Expr& e);
VarSet naive_free_vars(const Rhs& rhs);

/// Replaces every lambda's cardinality with the tightest bounds consistent
/// with the per-allocation entry counts in `stats`. Lambdas that were never
/// allocated keep their annotation.
Program with_exact_cardinalities(const Program& p, const AllocStats& stats);

/// Checks the lifter's output: it validates, lifted binders occur only as
/// call heads passing their full required set first, and every group is
/// lifted or kept as a whole. Returns one message per violation.
std::vector<std::string> structural_violations(const LiftResult& r);

/// Reads a file from the test data directory.
std::string read_data_file(const std::string& name);

/// Parses and prepares a file from the test data directory.
Program load_data_program(const std::string& name);

}  // namespace liftlab::testing

#endif  // LIFTLAB_TESTS_SUPPORT_ORACLES_H_
