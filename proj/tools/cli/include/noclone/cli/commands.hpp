// Copyright 2026 The noclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "noclone/matrixcore.hpp"

namespace noclone::cli {

/// Stable across all subcommands.
enum ExitCode : int {
  kFeasible = 0,
  kInfeasible = 1,
  kUndecided = 2,
  kInputError = 3,
  kInternalError = 4,
};

struct CommonOptions {
  std::optional<double> tol;  // overrides eps_gram, other tolerances scale with it
  std::optional<std::string> emit_unitary;
  bool json = false;

  Tolerances tolerances() const;
};

struct DeleteOptions {
  CommonOptions common;
  std::optional<std::uint64_t> twist;
  std::uint64_t seed = 0;
  bool collapse_demo = false;
};

/// Outcome of one command: the ReportDocument and its exit code. The human
/// rendering is derived from `report`, so both views always agree.
struct CommandResult {
  int exit_code = kInternalError;
  nlohmann::json report;

  std::string text() const;
};

CommandResult cmd_gram(const std::string& path, const CommonOptions& opts = {});
CommandResult cmd_clone_check(const std::string& psi_path, const std::string& ancilla_path,
                              const CommonOptions& opts = {});
CommandResult cmd_transform_check(const std::string& source_path, const std::string& target_path,
                                  const CommonOptions& opts = {});
CommandResult cmd_delete_check(const std::string& psi_path, const DeleteOptions& opts = {});

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace noclone::cli
