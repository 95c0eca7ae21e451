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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "noclone/matrixcore.hpp"
#include "noclone/states.hpp"

namespace noclone::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Malformed input; the message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledMixedState {
  std::string label;
  MixedState state;
};

/// One family per file: pure states and/or a list of density matrices.
struct FamilyDocument {
  std::string schema_version;
  Index dim = 0;
  std::vector<PureState> states;
  std::vector<LabeledMixedState> mixed;

  bool has_pure() const { return !states.empty(); }
  bool has_mixed() const { return !mixed.empty(); }
  StateFamily family() const;  // throws InputError when there are no pure states
  std::vector<MixedState> densities() const;
};

FamilyDocument parse_family(const nlohmann::json& doc, const Tolerances& tol = {});
FamilyDocument load_family(const std::filesystem::path& path, const Tolerances& tol = {});
nlohmann::json to_json(const FamilyDocument& doc);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& field);

/// {rows, cols, entries: [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field = "matrix");

}  // namespace noclone::cli
