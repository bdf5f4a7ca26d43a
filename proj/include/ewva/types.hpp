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

#include <array>
#include <complex>
#include <vector>

namespace ewva {

using Complex = std::complex<double>;

/// Qubit labels in amplitude-bit order: register[k] is bit k of the index
/// (little-endian, qubit at position 0 is the least significant bit).
using Register = std::vector<int>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace ewva
