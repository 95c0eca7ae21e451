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

#include <cmath>

#include "noclone/deleting.hpp"
#include "noclone/sampling.hpp"
#include "oracles.hpp"

using namespace noclone;
using Catch::Matchers::WithinAbs;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState ket0() { return PureState({1.0, 0.0}, "0"); }
PureState ket1() { return PureState({0.0, 1.0}, "1"); }
PureState plus() { return PureState({kInvSqrt2, kInvSqrt2}, "+"); }

const StateFamily& zero_plus() {
  static const StateFamily f{ket0(), plus()};
  return f;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected noclone::Error");
  return ErrorKind::MalformedProblem;
}

}  // namespace

TEST_CASE("swap_deleter construction", "[deleting]") {
  const Deleter d = swap_deleter(2, 2);
  CHECK(d.layout().total() == 8);
  CHECK(unitarity_defect(d.unitary()) <= 1e-9);
  // |psi>|psi>|0> -> |psi>|0>|psi>
  const Vector in = kron(kron(plus().amplitudes(), plus().amplitudes()), ket0().amplitudes());
  const Vector expected = kron(kron(plus().amplitudes(), ket0().amplitudes()), plus().amplitudes());
  CHECK((d.unitary() * in - expected).norm() < 1e-15);

  CHECK(kind_of([] { swap_deleter(3, 2); }) == ErrorKind::EnvTooSmall);

  sampling::Rng rng(2);
  const Deleter t = twist(swap_deleter(2, 4), sampling::haar_unitary(4, rng));
  CHECK(unitarity_defect(t.unitary()) <= 1e-9);
}

TEST_CASE("Deleter rejects non-unitary matrices", "[deleting]") {
  Matrix m = Matrix::Identity(8, 8);
  m(0, 0) = 2.0;
  CHECK(kind_of([&] { Deleter(m, PureState::basis(2, 0), PureState::basis(2, 0), {2, 2}); }) ==
        ErrorKind::NotOrthonormal);
}

TEST_CASE("analyze_deleter examples", "[deleting]") {
  SECTION("plain swap moves the copy verbatim") {
    const DeletionAnalysis a = analyze_deleter(swap_deleter(2, 2), zero_plus());
    CHECK(a.gram_preserved);
    CHECK(a.max_form_defect <= 1e-15);
    for (Index i = 0; i < 2; ++i) {
      CHECK_THAT(fidelity(a.residues[i], zero_plus()[i]), WithinAbs(1.0, 1e-14));
    }
    CHECK(a.resurrection.residual <= 1e-8);
  }
  SECTION("twisted swap hides the copy behind W") {
    sampling::Rng rng(42);
    const Matrix w = sampling::haar_unitary(4, rng);
    const DeletionAnalysis a = analyze_deleter(twist(swap_deleter(2, 4), w), zero_plus());
    CHECK(a.gram_preserved);
    for (Index i = 0; i < 2; ++i) {
      // A_i = W (psi_i (+) 0); undo W by hand.
      const Vector back = w.adjoint() * a.residues[i].amplitudes();
      CHECK_THAT(std::norm(zero_plus()[i].amplitudes().dot(back.head(2))), WithinAbs(1.0, 1e-12));
      CHECK(a.resurrection_fidelities[static_cast<std::size_t>(i)] >= 1.0 - 1e-9);
    }
  }
  SECTION("identity is not a deleter") {
    const Deleter id(Matrix::Identity(8, 8), PureState::basis(2, 0), PureState::basis(2, 0), {2, 2});
    CHECK(kind_of([&] { analyze_deleter(id, zero_plus()); }) == ErrorKind::NotADeleter);
  }
  SECTION("preconditions") {
    CHECK(kind_of([&] { analyze_deleter(swap_deleter(2, 2), StateFamily{ket0(), ket1()}); }) ==
          ErrorKind::OrthogonalPairPresent);
    CHECK(kind_of([&] { analyze_deleter(swap_deleter(3, 3), zero_plus()); }) ==
          ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("resurrect", "[deleting]") {
  const DeletionAnalysis swap = analyze_deleter(swap_deleter(2, 2), zero_plus());
  CHECK_THAT(fidelity(resurrect(swap, swap.residues[0]), ket0()), WithinAbs(1.0, 1e-12));

  sampling::Rng rng(5);
  const DeletionAnalysis twisted =
      analyze_deleter(twist(swap_deleter(2, 4), sampling::haar_unitary(4, rng)), zero_plus());
  CHECK(fidelity(resurrect(twisted, twisted.residues[1]), plus()) >= 1.0 - 1e-9);

  // A vector orthogonal to span{A_i} (the span is 2-dimensional inside 4).
  const Matrix cols = twisted.residues.columns();
  Vector v = Vector::Unit(4, 3);
  for (int pass = 0; pass < 2; ++pass) {
    const Matrix q = Eigen::HouseholderQR<Matrix>(cols).householderQ() * Matrix::Identity(4, 2);
    v -= q * (q.adjoint() * v);
  }
  v.normalize();
  CHECK(kind_of([&] { resurrect(twisted, PureState(v)); }) == ErrorKind::OutOfSpan);
}

TEST_CASE("no-deleting over random twisted swap deleters", "[deleting][property]") {
  sampling::Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + trial % 4;
    const Index d = 1 + (trial / 4) % 4;
    const Index d_env = d + (trial % (9 - d));
    if (d == 1 && n > 1) continue;  // all states in dimension 1 coincide up to phase
    const StateFamily psi = sampling::random_nonorthogonal_family(n, d, 0.05, rng);
    const Deleter del = twist(swap_deleter(d, d_env), sampling::haar_unitary(d_env, rng));
    CHECK(unitarity_defect(del.unitary()) <= 1e-9);
    const DeletionAnalysis a = analyze_deleter(del, psi);
    CHECK(a.gram_preserved);
    CHECK(oracle::max_abs(gram(a.residues).entries() - gram(psi).entries()) <= 1e-8);
    for (Index i = 0; i < n; ++i) {
      CHECK(fidelity(resurrect(a, a.residues[i]), psi[i]) >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("collapse_delete_demo", "[deleting]") {
  SECTION("|0> never needs a correction") {
    const CollapseTrace t = collapse_delete_demo(StateFamily{ket0()}, 1);
    REQUIRE(t.branches.size() == 1);
    CHECK(t.branches[0].outcome == 0);
    CHECK(oracle::max_abs(t.branches[0].correction - Matrix::Identity(2, 2)) == 0.0);
    CHECK(t.branches[0].final_state == Vector::Unit(4, 0));
  }
  SECTION("|+> branches end in |+>|0>") {
    const Vector target = kron(plus().amplitudes(), ket0().amplitudes());
    bool seen[2] = {false, false};
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      const CollapseTrace t = collapse_delete_demo(StateFamily{plus()}, seed);
      const auto& b = t.branches[0];
      CHECK_THAT(b.probabilities[0], WithinAbs(0.5, 1e-15));
      CHECK_THAT(b.probabilities[1], WithinAbs(0.5, 1e-15));
      CHECK((b.final_state - target).norm() < 1e-15);
      CHECK(b.register2_blank);
      CHECK(t.selective);
      seen[b.outcome] = true;
    }
    CHECK(seen[0]);
    CHECK(seen[1]);
  }
  SECTION("fixed seed reproduces the trace") {
    sampling::Rng rng(6);
    const StateFamily f = sampling::random_family(4, 3, rng);
    const CollapseTrace a = collapse_delete_demo(f, 99);
    const CollapseTrace b = collapse_delete_demo(f, 99);
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
      CHECK(a.branches[i].outcome == b.branches[i].outcome);
      CHECK(a.branches[i].final_state == b.branches[i].final_state);
      CHECK(a.branches[i].register1_fidelity >= 1.0 - 1e-12);
      CHECK(a.branches[i].register2_blank);
    }
  }
}
