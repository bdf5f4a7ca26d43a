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

#include <cstddef>

namespace ewva::tol {

// Single source for every numerical threshold in the library.

/// Algebraic identities that involve a handful of floating-point operations.
inline constexpr double kAlgebraic = 1e-12;
/// Results accumulated over many amplitudes or chained gates.
inline constexpr double kAccumulated = 1e-10;
/// Hermiticity check on Operator construction.
inline constexpr double kHermitian = 1e-12;
/// |<post|prep>| below this makes the weak value undefined.
inline constexpr double kOrthogonalPostselection = 1e-14;
/// Kept-branch probability below this is treated as a vanished branch.
inline constexpr double kVanishingBranch = 1e-300;
/// Variance below this means the preparation cannot be amplified.
inline constexpr double kDegenerateVariance = 1e-14;
/// Spectral gap below this means lambda_max == lambda_min.
inline constexpr double kDegenerateSpectrum = 1e-14;
/// Gram matrix deviation tolerated for a "complete orthonormal basis".
inline constexpr double kBasisCompleteness = 1e-10;

/// Default central-difference step for the QFI oracle.
inline constexpr double kQfiStep = 1e-4;
/// Relative change tolerated between step h and h/2 in the QFI oracle.
inline constexpr double kQfiStepAgreement = 1e-6;

#ifdef EWVA_MAX_QUBITS
inline constexpr std::size_t kMaxQubits = EWVA_MAX_QUBITS;
#else
inline constexpr std::size_t kMaxQubits = 20;
#endif

/// Registers at least this large are processed with OpenMP.
inline constexpr std::size_t kParallelMinDim = std::size_t{1} << 14;

}  // namespace ewva::tol
