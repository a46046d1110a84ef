// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver. Kept as a library so tests can run it in-process.
//
//   liftlab lift FILE [options]           decision report
//   liftlab dump-lifted FILE [options]    lifted program text
//   liftlab dump-skeleton FILE            one skeleton per top-level body
//   liftlab oracle FILE [--max-groups N]  allocation of every lifting subset
//
// Exit status: 0 on success, 1 on parse, validation or evaluation errors,
// 2 on usage errors.

#ifndef LIFTLAB_TOOLS_CLI_H_
#define LIFTLAB_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace liftlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liftlab::cli

#endif  // LIFTLAB_TOOLS_CLI_H_
