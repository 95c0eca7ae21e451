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

#include "noclone/cli/family_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace noclone::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError(field + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(field + "." + key, "missing");
  return *it;
}

std::string read_label(const json& entry, const std::string& field, std::set<std::string>& seen) {
  const json& label = require(entry, "label", field);
  if (!label.is_string()) fail(field + ".label", "expected a string");
  auto text = label.get<std::string>();
  if (!seen.insert(text).second) fail(field + ".label", "duplicate label '" + text + "'");
  return text;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(field, "expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) entries.push_back(complex_to_json(m(i, j)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  const json& rows = require(j, "rows", field);
  const json& cols = require(j, "cols", field);
  const json& entries = require(j, "entries", field);
  if (!rows.is_number_integer() || !cols.is_number_integer() || rows.get<Index>() < 0 ||
      cols.get<Index>() < 0) {
    fail(field, "rows and cols must be non-negative integers");
  }
  const auto r = rows.get<Index>();
  const auto c = cols.get<Index>();
  if (!entries.is_array() || static_cast<Index>(entries.size()) != r * c) {
    fail(field + ".entries", "expected rows*cols entries");
  }
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index k = 0; k < c; ++k) {
      const auto flat = static_cast<std::size_t>(i * c + k);
      m(i, k) = complex_from_json(entries[flat], field + ".entries[" + std::to_string(flat) + "]");
    }
  }
  return m;
}

StateFamily FamilyDocument::family() const {
  if (states.empty()) throw InputError("states: expected at least one pure state");
  return StateFamily(states);
}

std::vector<MixedState> FamilyDocument::densities() const {
  std::vector<MixedState> out;
  out.reserve(mixed.size());
  for (const auto& m : mixed) out.push_back(m.state);
  return out;
}

FamilyDocument parse_family(const json& doc, const Tolerances& tol) {
  FamilyDocument out;
  const json& version = require(doc, "schema_version", "document");
  if (!version.is_string()) fail("schema_version", "expected a string");
  out.schema_version = version.get<std::string>();
  if (out.schema_version != kSchemaVersion) {
    fail("schema_version", "unsupported version '" + out.schema_version + "'");
  }
  const json& dim = require(doc, "dim", "document");
  if (!dim.is_number_integer() || dim.get<Index>() < 1) fail("dim", "expected a positive integer");
  out.dim = dim.get<Index>();

  std::set<std::string> labels;
  if (doc.contains("states")) {
    const json& states = doc["states"];
    if (!states.is_array()) fail("states", "expected an array");
    for (std::size_t i = 0; i < states.size(); ++i) {
      const std::string field = "states[" + std::to_string(i) + "]";
      std::string label = read_label(states[i], field, labels);
      const json& amps = require(states[i], "amplitudes", field);
      if (!amps.is_array()) fail(field + ".amplitudes", "expected an array");
      if (static_cast<Index>(amps.size()) != out.dim) {
        std::ostringstream msg;
        msg << "expected " << out.dim << " entries, got " << amps.size();
        fail(field + ".amplitudes", msg.str());
      }
      Vector v(out.dim);
      for (Index k = 0; k < out.dim; ++k) {
        v(k) = complex_from_json(amps[static_cast<std::size_t>(k)],
                                 field + ".amplitudes[" + std::to_string(k) + "]");
      }
      try {
        out.states.emplace_back(std::move(v), std::move(label), tol);
      } catch (const Error& e) {
        fail(field + ".amplitudes", e.what());
      }
    }
  }
  if (doc.contains("mixed")) {
    const json& mixed = doc["mixed"];
    if (!mixed.is_array()) fail("mixed", "expected an array");
    for (std::size_t i = 0; i < mixed.size(); ++i) {
      const std::string field = "mixed[" + std::to_string(i) + "]";
      std::string label = read_label(mixed[i], field, labels);
      const json& density = require(mixed[i], "density", field);
      if (!density.is_array() || static_cast<Index>(density.size()) != out.dim) {
        fail(field + ".density", "expected " + std::to_string(out.dim) + " rows");
      }
      Matrix rho(out.dim, out.dim);
      for (Index r = 0; r < out.dim; ++r) {
        const json& row = density[static_cast<std::size_t>(r)];
        const std::string row_field = field + ".density[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != out.dim) {
          fail(row_field, "expected " + std::to_string(out.dim) + " entries");
        }
        for (Index c = 0; c < out.dim; ++c) {
          rho(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                        row_field + "[" + std::to_string(c) + "]");
        }
      }
      try {
        out.mixed.push_back({std::move(label), MixedState(std::move(rho), tol)});
      } catch (const Error& e) {
        fail(field + ".density", e.what());
      }
    }
  }
  if (out.states.empty() && out.mixed.empty()) {
    fail("states", "document has neither pure states nor mixed densities");
  }
  return out;
}

FamilyDocument load_family(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
  try {
    return parse_family(doc, tol);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

json to_json(const FamilyDocument& doc) {
  json out = {{"schema_version", doc.schema_version}, {"dim", doc.dim}};
  json states = json::array();
  for (const auto& s : doc.states) {
    json amps = json::array();
    for (Index k = 0; k < s.dim(); ++k) amps.push_back(complex_to_json(s[k]));
    states.push_back({{"label", s.label()}, {"amplitudes", std::move(amps)}});
  }
  out["states"] = std::move(states);
  if (!doc.mixed.empty()) {
    json mixed = json::array();
    for (const auto& m : doc.mixed) {
      json rows = json::array();
      for (Index r = 0; r < m.state.dim(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.state.dim(); ++c) row.push_back(complex_to_json(m.state.density()(r, c)));
        rows.push_back(std::move(row));
      }
      mixed.push_back({{"label", m.label}, {"density", std::move(rows)}});
    }
    out["mixed"] = std::move(mixed);
  }
  return out;
}

}  // namespace noclone::cli
