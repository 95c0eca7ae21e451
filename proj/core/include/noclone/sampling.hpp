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

#include <random>

#include "noclone/matrixcore.hpp"
#include "noclone/states.hpp"

namespace noclone::sampling {

using Rng = std::mt19937_64;

/// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix haar_unitary(Index dim, Rng& rng);

/// Haar-random pure state.
PureState random_state(Index dim, Rng& rng, std::string label = {});

/// `n` Haar-random states of dimension `dim`.
StateFamily random_family(Index n, Index dim, Rng& rng);

/// Random family whose pairwise |overlaps| all exceed `min_overlap`
/// (rejection sampling).
StateFamily random_nonorthogonal_family(Index n, Index dim, double min_overlap, Rng& rng);

/// Random density matrix of the given rank (trace of Wishart-like product).
MixedState random_mixed(Index dim, Index rank, Rng& rng);

/// Each member multiplied by an independent uniform phase.
StateFamily random_phases(const StateFamily& family, Rng& rng);

/// u * family.
StateFamily rotate(const StateFamily& family, const Matrix& u);

}  // namespace noclone::sampling
