// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace tunespace {

/// Exit status of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2 };

/// Runs `tunespace <subcommand> ...`. Normal output goes to `out`, diagnostics
/// and the synopsis on usage errors go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tunespace
