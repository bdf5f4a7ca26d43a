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

// Amplitude-level kernels. Every kernel exists twice: the OpenMP version in
// ewva::kernels (parallel once the vector reaches tol::kParallelMinDim) and a
// plain loop in ewva::kernels::reference that the tests and the benchmark
// compare against. Bit positions are amplitude-index bits, not labels.

#include <cstddef>
#include <span>

#include "ewva/types.hpp"

namespace ewva::kernels {

void apply_1q(std::span<Complex> amps, unsigned bit, const Mat2& m);
void apply_controlled_1q(std::span<Complex> amps, unsigned control, unsigned target, const Mat2& m);
/// `matrix` is column-major, dimension 2^bits.size(); bits[j] is the j-th
/// bit of the operator's local index.
void apply_dense(std::span<Complex> amps, std::span<const unsigned> bits,
                 std::span<const Complex> matrix);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> a);
/// Zeroes every amplitude whose `bit` differs from `outcome`; returns the
/// squared norm that survives.
double project_bit(std::span<Complex> amps, unsigned bit, int outcome);

namespace reference {

void apply_1q(std::span<Complex> amps, unsigned bit, const Mat2& m);
void apply_controlled_1q(std::span<Complex> amps, unsigned control, unsigned target, const Mat2& m);
void apply_dense(std::span<Complex> amps, std::span<const unsigned> bits,
                 std::span<const Complex> matrix);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> a);
double project_bit(std::span<Complex> amps, unsigned bit, int outcome);

}  // namespace reference
}  // namespace ewva::kernels
