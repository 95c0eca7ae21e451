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

#include "noclone/equivalence.hpp"
#include "noclone/sampling.hpp"
#include "oracles.hpp"

using namespace noclone;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState ket0() { return PureState({1.0, 0.0}, "0"); }
PureState ket1() { return PureState({0.0, 1.0}, "1"); }
PureState plus() { return PureState({kInvSqrt2, kInvSqrt2}, "+"); }

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

TEST_CASE("grams_equal examples", "[equivalence]") {
  const GramMatrix g = gram(StateFamily{ket0(), plus()});
  CHECK(grams_equal(g, g));
  CHECK_FALSE(grams_equal(GramMatrix(Matrix::Identity(2, 2)), GramMatrix(Matrix::Ones(2, 2))));
  CHECK(grams_equal(g, gram(StateFamily{plus(), ket0()})));
  CHECK(kind_of([&] { grams_equal(g, GramMatrix(Matrix::Identity(3, 3))); }) ==
        ErrorKind::SizeMismatch);
}

TEST_CASE("unitary_linking examples", "[equivalence]") {
  const StateFamily zp{ket0(), plus()};
  const StateFamily pz{plus(), ket0()};

  SECTION("identical families") {
    const LinkingUnitary u = unitary_linking(zp, zp);
    CHECK(u.residual <= 1e-8);
    CHECK(unitarity_defect(u.matrix) <= 1e-9);
  }
  SECTION("swap 0 and + is a Hadamard-type reflection") {
    const LinkingUnitary u = unitary_linking(zp, pz);
    CHECK(u.residual <= 1e-8);
    Matrix h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    // Span is the whole space, so U is unique.
    CHECK(oracle::max_abs(u.matrix - h) < 1e-12);
  }
  SECTION("Gram mismatch is refused") {
    CHECK(kind_of([&] { unitary_linking(StateFamily{ket0(), ket1()}, zp); }) ==
          ErrorKind::GramMismatch);
  }
  SECTION("different dimensions are padded") {
    const StateFamily wide{PureState::basis(3, 2), PureState({0.0, kInvSqrt2, kInvSqrt2})};
    const StateFamily narrow{ket1(), PureState({kInvSqrt2, kInvSqrt2})};
    const LinkingUnitary u = unitary_linking(narrow, wide);
    CHECK(u.embed_dim == 3);
    CHECK(u.residual <= 1e-8);
  }
  SECTION("linearly dependent families") {
    const PureState minus({kInvSqrt2, -kInvSqrt2});
    const StateFamily a{ket0(), ket1(), plus(), minus};
    sampling::Rng rng(1);
    const StateFamily b = sampling::rotate(a, sampling::haar_unitary(2, rng));
    const LinkingUnitary u = unitary_linking(a, b);
    CHECK(u.residual <= 1e-8);
  }
}

TEST_CASE("verify_linking examples", "[equivalence]") {
  const StateFamily zp{ket0(), plus()};
  const StateFamily pz{plus(), ket0()};
  LinkingUnitary identity{Matrix::Identity(2, 2), 2, 0.0};
  auto r = verify_linking(identity, zp, zp);
  CHECK(r.unitarity_defect == 0.0);
  CHECK(r.max_residual == 0.0);

  Matrix h(2, 2);
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  r = verify_linking(LinkingUnitary{h, 2, 0.0}, zp, pz);
  CHECK(r.unitarity_defect <= 1e-10);
  CHECK(r.max_residual <= 1e-10);

  r = verify_linking(identity, StateFamily{ket0()}, StateFamily{ket1()});
  CHECK(std::abs(r.max_residual - std::sqrt(2.0)) < 1e-15);

  CHECK(kind_of([&] { verify_linking(identity, StateFamily{PureState::basis(3, 0)}, zp); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("unitary_linking completeness, soundness and symmetry", "[equivalence][property]") {
  sampling::Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 6;
    const Index d = 1 + (trial / 6) % 8;
    const StateFamily a = sampling::random_family(n, d, rng);
    const StateFamily b = sampling::rotate(a, sampling::haar_unitary(d, rng));
    const LinkingUnitary ab = unitary_linking(a, b);
    const auto report = verify_linking(ab, a, b);
    CHECK(report.unitarity_defect <= 1e-9);
    CHECK(report.max_residual <= 1e-8);
    // Soundness, checked with the loop Gram.
    std::vector<Vector> ca, cb;
    for (Index i = 0; i < n; ++i) {
      ca.push_back(a[i].amplitudes());
      cb.push_back(b[i].amplitudes());
    }
    CHECK(oracle::max_abs(oracle::gram_loop(ca) - oracle::gram_loop(cb)) <= 1e-8);
    // Symmetry: the reverse link undoes the forward one on span(A).
    const LinkingUnitary ba = unitary_linking(b, a);
    for (Index i = 0; i < n; ++i) {
      CHECK((ba.matrix * ab.apply(a[i].amplitudes()) - a[i].amplitudes()).norm() <= 1e-7);
    }
  }
}
