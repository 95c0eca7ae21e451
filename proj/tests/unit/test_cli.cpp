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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "noclone/cli/commands.hpp"
#include "noclone/cli/family_io.hpp"
#include "noclone/matrixcore.hpp"

using namespace noclone;
using namespace noclone::cli;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(NOCLONE_FIXTURES) + "/" + name; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("noclone_test_" + name);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

int run_args(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "noclone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

void check_report_shape(const CommandResult& r) {
  const json& j = r.report;
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("exit_code") == r.exit_code);
  CHECK(j.at("verdict").is_string());
  CHECK(j.at("witnesses").is_object());
  CHECK(j.at("tolerances").contains("eps_gram"));
  CHECK(j.at("runtime_ms").get<double>() >= 0.0);
  // Round-trips through text.
  CHECK(json::parse(j.dump()) == j);
  // Human rendering carries the same verdict and exit code.
  const std::string text = r.text();
  CHECK(text.find(j.at("verdict").get<std::string>()) != std::string::npos);
  CHECK(text.find("exit " + std::to_string(r.exit_code) + ")") != std::string::npos);
}

}  // namespace

TEST_CASE("gram command", "[cli]") {
  const CommandResult r = cmd_gram(fixture("orthogonal_pair.json"));
  REQUIRE(r.exit_code == kFeasible);
  check_report_shape(r);
  CHECK(r.report["verdict"] == "ok");
  const Matrix g = matrix_from_json(r.report["witnesses"]["gram"]);
  REQUIRE(g.rows() == 3);
  CHECK(std::abs(g(0, 1)) < 1e-15);
  CHECK(std::abs(g(0, 2) - Complex(1.0 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("clone-check command", "[cli]") {
  SECTION("orthogonal pair with distinguishing ancilla") {
    const CommandResult r = cmd_clone_check(fixture("orthogonal_pair.json"), fixture("flag_ancilla.json"));
    CHECK(r.exit_code == kFeasible);
    check_report_shape(r);
    CHECK(r.report["witnesses"]["route"] == "psd-completion");
  }
  SECTION("constant ancilla is infeasible") {
    const CommandResult r = cmd_clone_check(fixture("zero_plus.json"), fixture("constant_ancilla.json"));
    CHECK(r.exit_code == kInfeasible);
    check_report_shape(r);
    CHECK(r.report["witnesses"]["route"] == "supplement-matrix");
    // M = [[1, sqrt2], [sqrt2, 1]] has smallest eigenvalue 1 - sqrt2.
    CHECK(std::abs(r.report["witnesses"]["min_eigenvalue"].get<double>() - (1.0 - std::sqrt(2.0))) < 1e-12);
  }
  SECTION("ancilla equal to psi is enough") {
    const CommandResult r = cmd_clone_check(fixture("zero_plus.json"), fixture("zero_plus.json"));
    CHECK(r.exit_code == kFeasible);
    for (const auto& f : r.report["witnesses"]["channel_fidelities"]) CHECK(f.get<double>() >= 1.0 - 1e-9);
  }
  SECTION("maximally mixed ancilla carries nothing") {
    const CommandResult r =
        cmd_clone_check(fixture("zero_plus.json"), fixture("maximally_mixed_ancilla.json"));
    CHECK(r.exit_code == kInfeasible);
    check_report_shape(r);
  }
  SECTION("length mismatch is an input error") {
    const CommandResult r = cmd_clone_check(fixture("orthogonal_pair.json"), fixture("zero_plus.json"));
    CHECK(r.exit_code == kInputError);
    CHECK(r.report.contains("error"));
  }
}

TEST_CASE("transform-check command", "[cli]") {
  SECTION("ancilla cannot become psi") {
    const CommandResult r = cmd_transform_check(fixture("flag_ancilla.json"), fixture("orthogonal_pair.json"));
    REQUIRE(r.exit_code == kInfeasible);
    check_report_shape(r);
    const json& c = r.report["witnesses"]["contradiction"];
    CHECK(c["i"] == 0);
    CHECK(c["j"] == 1);
  }
  SECTION("emitted unitary file") {
    const auto path = temp_path("hadamard.json");
    CommonOptions opts;
    opts.emit_unitary = path.string();
    const CommandResult r = cmd_transform_check(fixture("zero_plus.json"), fixture("plus_zero.json"), opts);
    REQUIRE(r.exit_code == kFeasible);
    std::ifstream in(path);
    const json doc = json::parse(in);
    CHECK(doc["rows"] == doc["cols"]);
    const Matrix u = matrix_from_json(doc);
    CHECK(unitarity_defect(u) <= 1e-9);
    const Vector out = u * Vector::Unit(u.rows(), 0);
    CHECK(std::abs(std::abs(out(0)) - 1.0 / std::sqrt(2.0)) < 1e-9);
    std::filesystem::remove(path);
  }
}

TEST_CASE("delete-check command", "[cli]") {
  SECTION("swap deleter") {
    const CommandResult r = cmd_delete_check(fixture("zero_plus.json"));
    CHECK(r.exit_code == kFeasible);
    check_report_shape(r);
    CHECK(r.report["verdict"] == "ok");
  }
  SECTION("twisted deleter") {
    DeleteOptions opts;
    opts.twist = 42;
    const CommandResult r = cmd_delete_check(fixture("zero_plus.json"), opts);
    CHECK(r.exit_code == kFeasible);
    CHECK(r.report["witnesses"]["mode"] == "twisted-swap");
  }
  SECTION("collapse demo is reproducible") {
    DeleteOptions opts;
    opts.collapse_demo = true;
    opts.seed = 7;
    const CommandResult a = cmd_delete_check(fixture("plus.json"), opts);
    const CommandResult b = cmd_delete_check(fixture("plus.json"), opts);
    REQUIRE(a.exit_code == kFeasible);
    CHECK(a.report["witnesses"]["branches"] == b.report["witnesses"]["branches"]);
    CHECK(a.report["witnesses"]["selective"] == true);
  }
}

TEST_CASE("malformed input names the field", "[cli]") {
  const CommandResult r = cmd_gram(fixture("bad_length.json"));
  CHECK(r.exit_code == kInputError);
  CHECK(r.report["error"].get<std::string>().find("amplitudes") != std::string::npos);

  const auto path = temp_path("unnormalized.json");
  write_text(path, R"({"schema_version": "1", "dim": 2,
    "states": [{"label": "x", "amplitudes": [[1, 0], [1, 0]]}]})");
  const CommandResult u = cmd_gram(path.string());
  CHECK(u.exit_code == kInputError);

  write_text(path, "{ not json");
  CHECK(cmd_gram(path.string()).exit_code == kInputError);
  CHECK(cmd_gram(temp_path("missing.json").string()).exit_code == kInputError);
  std::filesystem::remove(path);
}

TEST_CASE("family documents round-trip", "[cli]") {
  const FamilyDocument doc = load_family(fixture("orthogonal_pair.json"));
  const FamilyDocument again = parse_family(to_json(doc));
  REQUIRE(again.family().size() == doc.family().size());
  CHECK((again.family().columns() - doc.family().columns()).norm() == 0.0);
}

TEST_CASE("command-line entry point", "[cli]") {
  std::string out;
  CHECK(run_args({"clone-check", fixture("orthogonal_pair.json"), fixture("flag_ancilla.json")}, &out) == 0);
  CHECK(out.find("exit 0)") != std::string::npos);
  CHECK(run_args({"transform-check", fixture("flag_ancilla.json"), fixture("orthogonal_pair.json"), "--json"},
                 &out) == 1);
  const json j = json::parse(out);
  CHECK(j["exit_code"] == 1);
  CHECK(run_args({"gram"}) == kInputError);
  CHECK(run_args({"no-such-command"}) == kInputError);
  CHECK(run_args({"gram", fixture("orthogonal_pair.json"), "--tol", "-1"}) == kInputError);
}
