// Copyright 2026 The ewva Authors
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
#include <span>
#include <vector>

#include "ewva/statevec.hpp"

namespace ewva {

/// Every seeded draw in the project goes through this engine.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

/// Haar-random pure state (normalized complex Gaussian vector).
Ket random_ket(const Register& reg, Rng& rng);
/// Random Hermitian matrix with Gaussian entries.
Operator random_hermitian(const Register& reg, Rng& rng);
/// Random unit vector orthogonal to every ket in `avoid` (all on `reg`).
Ket random_ket_orthogonal_to(const Register& reg, std::span<const Ket> avoid, Rng& rng);
/// Random orthonormal basis whose first element is `first` (normalized).
std::vector<Ket> random_completion(const Ket& first, Rng& rng);

}  // namespace ewva
