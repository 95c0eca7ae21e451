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

#include "noclone/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "noclone/cli/family_io.hpp"
#include "noclone/cloning.hpp"
#include "noclone/completion.hpp"
#include "noclone/deleting.hpp"
#include "noclone/equivalence.hpp"
#include "noclone/sampling.hpp"
#include "noclone/states.hpp"

namespace noclone::cli {

using nlohmann::json;

namespace {

constexpr double kFidelityFloor = 1.0 - 1e-9;

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LengthMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::SizeMismatch:
    case ErrorKind::EmptyFamily:
    case ErrorKind::InvalidTolerance:
    case ErrorKind::OrthogonalPairPresent:
    case ErrorKind::EnvTooSmall:
    case ErrorKind::NotNormalized:
      return true;
    default:
      return false;
  }
}

json tolerances_json(const Tolerances& tol) {
  return {{"eps_gram", tol.eps_gram},
          {"eps_psd", tol.eps_psd},
          {"eps_rank", tol.eps_rank},
          {"eps_orth", tol.eps_orth},
          {"eps_norm", tol.eps_norm}};
}

std::string_view verdict_name(int exit_code) {
  switch (exit_code) {
    case kFeasible: return "feasible";
    case kInfeasible: return "infeasible";
    case kUndecided: return "undecided";
    default: return "error";
  }
}

int exit_for(Feasibility verdict) {
  switch (verdict) {
    case Feasibility::Feasible: return kFeasible;
    case Feasibility::Infeasible: return kInfeasible;
    case Feasibility::Undecided: return kUndecided;
  }
  return kUndecided;
}

void emit_unitary(const CommonOptions& opts, const Matrix& u, json& witnesses) {
  if (!opts.emit_unitary) return;
  std::ofstream out(*opts.emit_unitary);
  if (!out) throw InputError("--emit-unitary: cannot write " + *opts.emit_unitary);
  out << matrix_to_json(u).dump(2) << '\n';
  witnesses["emitted_unitary"] = *opts.emit_unitary;
}

// Body returns the exit code and fills `witnesses`; the wrapper owns timing,
// tolerance reporting and error mapping.
CommandResult execute(const std::string& command, json inputs, const CommonOptions& opts,
                      const std::function<int(const Tolerances&, json&)>& body,
                      bool ok_verdict = false) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  json witnesses = json::object();
  Tolerances tol;
  std::string error;
  try {
    tol = opts.tolerances();
    result.exit_code = body(tol, witnesses);
  } catch (const InputError& e) {
    result.exit_code = kInputError;
    error = e.what();
  } catch (const Error& e) {
    result.exit_code = is_input_error(e.kind()) ? kInputError : kInternalError;
    error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kInternalError;
    error = e.what();
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json& r = result.report;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["verdict"] = (ok_verdict && result.exit_code == kFeasible) ? "ok"
                                                               : verdict_name(result.exit_code);
  r["exit_code"] = result.exit_code;
  r["witnesses"] = std::move(witnesses);
  if (!error.empty()) r["error"] = error;
  r["tolerances"] = tolerances_json(tol);
  r["runtime_ms"] = elapsed;
  return result;
}

json doubles(const std::vector<double>& values) { return json(values); }

double min_of(const std::vector<double>& values) {
  return values.empty() ? 1.0 : *std::min_element(values.begin(), values.end());
}

// Cloning-module route: no orthogonal pairs among the targets.
int clone_via_supplement(const StateFamily& psi, const StateFamily& alpha, const Tolerances& tol,
                         const CommonOptions& opts, json& w, bool transform_only) {
  const SupplementMatrix m = supplement_matrix(psi, alpha, tol);
  const PsdCheck check = is_psd(m.entries(), tol);
  w["route"] = "supplement-matrix";
  w["supplement_matrix"] = matrix_to_json(m.entries());
  w["min_eigenvalue"] = check.min_eigenvalue;
  const CloneVerdict verdict = clone_feasible_pure(psi, alpha, tol);
  const CloneCertificate* cert = verdict.certificate();
  if (!cert) return kInfeasible;

  const auto ancilla_fid = cert->ancilla_clone_fidelities(psi, alpha);
  const auto channel_fid = cert->channel_fidelities(psi, alpha);
  w["residue_dim"] = cert->residues.dim();
  w["ancilla_map"] = {{"dim", cert->ancilla_map.embed_dim},
                      {"residual", cert->ancilla_map.residual},
                      {"unitarity_defect", unitarity_defect(cert->ancilla_map.matrix)}};
  w["ancilla_fidelities"] = doubles(ancilla_fid);
  if (!transform_only) {
    w["dilated_unitary"] = {{"dim", cert->dilated_unitary.embed_dim},
                            {"residual", cert->dilated_unitary.residual},
                            {"unitarity_defect", unitarity_defect(cert->dilated_unitary.matrix)}};
    w["channel_fidelities"] = doubles(channel_fid);
  }
  if (min_of(ancilla_fid) < kFidelityFloor || (!transform_only && min_of(channel_fid) < kFidelityFloor)) {
    w["inconsistency"] = "certificate fidelity below 1 - 1e-9";
    return kInternalError;
  }
  emit_unitary(opts, transform_only ? cert->ancilla_map.matrix : cert->dilated_unitary.matrix, w);
  return kFeasible;
}

// Completion route: source -> target with orthogonal target pairs allowed.
int transform_via_completion(const StateFamily& source, const StateFamily& target,
                             const Tolerances& tol, const CommonOptions& opts, json& w) {
  w["route"] = "psd-completion";
  const TransformProblem problem = transform_problem(source, target, tol);
  const SolveReport report = solve(problem, tol);
  w["solver"] = {{"verdict", to_string(report.verdict)},
                 {"iterations", report.iterations},
                 {"residual", report.residual}};
  if (problem.problem) {
    const auto& mask = problem.problem->fixed_mask;
    json free_pairs = json::array();
    for (Index i = 0; i < mask.rows(); ++i)
      for (Index j = i + 1; j < mask.cols(); ++j)
        if (!mask(i, j)) free_pairs.push_back({i, j});
    w["free_entries"] = std::move(free_pairs);
  }
  if (report.witness) {
    w["infeasibility_witness"] = describe(*report.witness);
    if (const auto* z = std::get_if<ZeroContradiction>(&*report.witness)) {
      w["contradiction"] = {{"i", z->i},
                            {"j", z->j},
                            {"source_overlap", complex_to_json(z->source_overlap)},
                            {"target_overlap", complex_to_json(z->target_overlap)}};
    } else {
      const auto& minor = std::get<NegativeMinor>(*report.witness);
      w["negative_minor"] = {{"indices", minor.indices}, {"min_eigenvalue", minor.min_eigenvalue}};
    }
  }
  if (report.verdict != Feasibility::Feasible) return exit_for(report.verdict);

  w["completion"] = matrix_to_json(*report.completion);
  // A completion on the boundary of the PSD cone is only accurate to the
  // solver floor, which can be too coarse for an exact unitary. The verdict
  // stands either way.
  try {
    const LinkingUnitary link = realize_transform(source, target, *report.completion, tol);
    w["link"] = {{"realized", true},
                 {"dim", link.embed_dim},
                 {"residual", link.residual},
                 {"unitarity_defect", unitarity_defect(link.matrix)}};
    emit_unitary(opts, link.matrix, w);
  } catch (const Error& e) {
    w["link"] = {{"realized", false}, {"reason", e.what()}};
  }
  return kFeasible;
}

struct AncillaInput {
  StateFamily psi;
  StateFamily alpha;
};

// Mixed ancillas flatten to the (i, k) extended families.
AncillaInput resolve_ancilla(const StateFamily& psi, const FamilyDocument& ancilla,
                             const Tolerances& tol, json& w) {
  if (!ancilla.has_mixed()) return {psi, ancilla.family()};
  if (ancilla.has_pure()) throw InputError("ancilla: use either states or mixed, not both");
  const auto rhos = ancilla.densities();
  if (static_cast<Index>(rhos.size()) != psi.size()) {
    throw InputError("mixed: expected " + std::to_string(psi.size()) + " densities, got " +
                     std::to_string(rhos.size()));
  }
  ExtendedFamilies ext = extend_over_ensembles(psi, rhos, tol);
  json pairs = json::array();
  for (const auto& [i, k] : ext.pairs) pairs.push_back({i, k});
  w["ancilla_kind"] = "mixed";
  w["extended_pairs"] = std::move(pairs);
  return {std::move(ext.psi), std::move(ext.alpha)};
}

void require_aligned(const StateFamily& a, const StateFamily& b) {
  if (a.size() != b.size()) {
    throw InputError("families have " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()) + " members");
  }
}

std::string format_complex(Complex z) {
  std::ostringstream s;
  s << std::setprecision(8) << std::defaultfloat;
  const double re = std::abs(z.real()) < 5e-16 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-16 ? 0.0 : z.imag();
  if (im == 0.0) {
    s << re;
  } else {
    s << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  }
  return s.str();
}

bool looks_like_matrix(const json& j) {
  return j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries");
}

void render(std::ostream& out, const std::string& key, const json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (looks_like_matrix(value)) {
    const Matrix m = matrix_from_json(value, key);
    out << pad << key << ":\n";
    for (Index i = 0; i < m.rows(); ++i) {
      out << pad << "  [";
      for (Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << format_complex(m(i, j));
      out << "]\n";
    }
  } else if (value.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, v] : value.items()) render(out, k, v, indent + 2);
  } else if (value.is_array() && !value.empty() && value.front().is_object()) {
    out << pad << key << ":\n";
    for (std::size_t i = 0; i < value.size(); ++i) {
      render(out, "[" + std::to_string(i) + "]", value[i], indent + 2);
    }
  } else {
    out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
}

}  // namespace

Tolerances CommonOptions::tolerances() const {
  if (!tol) return {};
  if (!(*tol > 0.0)) throw InputError("--tol: must be positive");
  return Tolerances{}.scaled_to(*tol);
}

std::string CommandResult::text() const {
  std::ostringstream out;
  out << report.value("command", "?") << ": " << report.value("verdict", "?") << " (exit "
      << exit_code << ")\n";
  if (report.contains("error")) out << "error: " << report["error"].get<std::string>() << '\n';
  for (const auto& [k, v] : report["witnesses"].items()) render(out, k, v, 2);
  out << "tolerances:";
  for (const auto& [k, v] : report["tolerances"].items()) out << ' ' << k << '=' << v.get<double>();
  out << '\n' << "runtime_ms: " << report.value("runtime_ms", 0.0) << '\n';
  return out.str();
}

CommandResult cmd_gram(const std::string& path, const CommonOptions& opts) {
  return execute("gram", {{"family", path}}, opts, [&](const Tolerances& tol, json& w) {
    const FamilyDocument doc = load_family(path, tol);
    const StateFamily family = doc.family();
    w["size"] = family.size();
    w["dim"] = family.dim();
    w["gram"] = matrix_to_json(gram(family).entries());
    return kFeasible;
  }, /*ok_verdict=*/true);
}

CommandResult cmd_clone_check(const std::string& psi_path, const std::string& ancilla_path,
                              const CommonOptions& opts) {
  json inputs = {{"psi", psi_path}, {"ancilla", ancilla_path}};
  return execute("clone-check", std::move(inputs), opts, [&](const Tolerances& tol, json& w) {
    const StateFamily psi = load_family(psi_path, tol).family();
    const FamilyDocument ancilla_doc = load_family(ancilla_path, tol);
    const AncillaInput in = resolve_ancilla(psi, ancilla_doc, tol, w);
    require_aligned(in.psi, in.alpha);
    if (!has_orthogonal_pair(psi, tol)) {
      return clone_via_supplement(in.psi, in.alpha, tol, opts, w, /*transform_only=*/false);
    }
    w["orthogonal_targets"] = true;
    return transform_via_completion(tensor(in.psi, in.alpha), tensor(in.psi, in.psi), tol, opts, w);
  });
}

CommandResult cmd_transform_check(const std::string& source_path, const std::string& target_path,
                                  const CommonOptions& opts) {
  json inputs = {{"source", source_path}, {"target", target_path}};
  return execute("transform-check", std::move(inputs), opts, [&](const Tolerances& tol, json& w) {
    const FamilyDocument source_doc = load_family(source_path, tol);
    const StateFamily target = load_family(target_path, tol).family();
    const AncillaInput in = resolve_ancilla(target, source_doc, tol, w);
    require_aligned(in.psi, in.alpha);
    if (!has_orthogonal_pair(target, tol)) {
      return clone_via_supplement(in.psi, in.alpha, tol, opts, w, /*transform_only=*/true);
    }
    w["orthogonal_targets"] = true;
    return transform_via_completion(in.alpha, in.psi, tol, opts, w);
  });
}

CommandResult cmd_delete_check(const std::string& psi_path, const DeleteOptions& opts) {
  json inputs = {{"psi", psi_path}};
  return execute("delete-check", std::move(inputs), opts.common, [&](const Tolerances& tol, json& w) {
    const StateFamily psi = load_family(psi_path, tol).family();

    if (opts.collapse_demo) {
      const CollapseTrace trace = collapse_delete_demo(psi, opts.seed);
      w["mode"] = "collapse-demo";
      w["seed"] = trace.seed;
      w["selective"] = trace.selective;
      json branches = json::array();
      bool consistent = true;
      for (const auto& b : trace.branches) {
        json final_state = json::array();
        for (Index k = 0; k < b.final_state.size(); ++k) {
          final_state.push_back(complex_to_json(b.final_state(k)));
        }
        branches.push_back({{"member", b.member},
                            {"probabilities", b.probabilities},
                            {"outcome", b.outcome},
                            {"correction", matrix_to_json(b.correction)},
                            {"final_state", std::move(final_state)},
                            {"register1_fidelity", b.register1_fidelity},
                            {"register2_blank", b.register2_blank}});
        consistent = consistent && b.register2_blank && b.register1_fidelity >= kFidelityFloor;
      }
      w["branches"] = std::move(branches);
      return consistent ? kFeasible : kInternalError;
    }

    const Index d = psi.dim();
    Deleter deleter = swap_deleter(d, opts.twist ? 2 * d : d);
    w["mode"] = opts.twist ? "twisted-swap" : "swap";
    if (opts.twist) {
      sampling::Rng rng(*opts.twist);
      deleter = twist(deleter, sampling::haar_unitary(deleter.layout().d_env, rng));
      w["twist_seed"] = *opts.twist;
    }
    w["layout"] = {{"d", deleter.layout().d}, {"d_env", deleter.layout().d_env}};
    w["deleter_unitarity_defect"] = unitarity_defect(deleter.unitary());

    DeletionAnalysis analysis = [&] {
      try {
        return analyze_deleter(deleter, psi, tol);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotADeleter || e.kind() == ErrorKind::GramMismatch) {
          throw std::runtime_error(std::string("no-deleting check violated: ") + e.what());
        }
        throw;
      }
    }();
    std::vector<double> resurrected;
    for (Index i = 0; i < psi.size(); ++i) {
      resurrected.push_back(fidelity(resurrect(analysis, analysis.residues[i], tol), psi[i]));
    }
    w["max_form_defect"] = analysis.max_form_defect;
    w["gram_preserved"] = analysis.gram_preserved;
    w["gram_difference"] = max_abs(gram(analysis.residues).entries() - gram(psi).entries());
    w["resurrection_residual"] = analysis.resurrection.residual;
    w["resurrection_fidelities"] = doubles(resurrected);
    emit_unitary(opts.common, analysis.resurrection.matrix, w);
    const bool consistent = analysis.gram_preserved && min_of(resurrected) >= kFidelityFloor &&
                            min_of(analysis.resurrection_fidelities) >= kFidelityFloor;
    return consistent ? kFeasible : kInternalError;
  }, /*ok_verdict=*/true);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"noclone: assisted cloning, state transformation and no-deleting checks", "noclone"};
  app.require_subcommand(1);

  CommonOptions common;
  DeleteOptions del;
  std::string first, second;

  auto add_common = [&](CLI::App* sub, CommonOptions& o, bool with_emit) {
    sub->add_option("--tol", o.tol, "Gram equality tolerance; other tolerances scale with it");
    sub->add_flag("--json", o.json, "Emit the report as a single JSON document");
    if (with_emit) sub->add_option("--emit-unitary", o.emit_unitary, "Write the constructed unitary");
  };

  auto* gram_cmd = app.add_subcommand("gram", "Print the Gram matrix of a family");
  gram_cmd->add_option("family", first, "FamilyDocument JSON")->required();
  add_common(gram_cmd, common, false);

  auto* clone_cmd = app.add_subcommand("clone-check", "Decide |psi>(x)rho -> |psi>|psi>");
  clone_cmd->add_option("psi", first, "Target family")->required();
  clone_cmd->add_option("ancilla", second, "Ancilla family (pure or mixed)")->required();
  add_common(clone_cmd, common, true);

  auto* transform_cmd = app.add_subcommand("transform-check", "Decide source_i -> target_i");
  transform_cmd->add_option("source", first, "Source family")->required();
  transform_cmd->add_option("target", second, "Target family")->required();
  add_common(transform_cmd, common, true);

  auto* delete_cmd = app.add_subcommand("delete-check", "Analyze a swap deleter on a family");
  delete_cmd->add_option("psi", first, "Family to delete")->required();
  add_common(delete_cmd, del.common, true);
  delete_cmd->add_option("--twist", del.twist, "Scramble the environment with a seeded unitary");
  delete_cmd->add_option("--seed", del.seed, "Seed for the collapse demo");
  delete_cmd->add_flag("--collapse-demo", del.collapse_demo, "Measure-and-rotate deletion trace");

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  CommandResult result;
  bool as_json = common.json;
  if (*gram_cmd) {
    result = cmd_gram(first, common);
  } else if (*clone_cmd) {
    result = cmd_clone_check(first, second, common);
  } else if (*transform_cmd) {
    result = cmd_transform_check(first, second, common);
  } else {
    result = cmd_delete_check(first, del);
    as_json = del.common.json;
  }
  if (as_json) {
    out << result.report.dump(2) << '\n';
  } else {
    out << result.text();
  }
  if (result.exit_code >= kInputError && result.report.contains("error")) {
    err << "noclone: " << result.report["error"].get<std::string>() << '\n';
  }
  return result.exit_code;
}

}  // namespace noclone::cli
