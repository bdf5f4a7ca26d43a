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

// Serial reference vs OpenMP kernels on random states.
//   ./ewva_bench --benchmark_filter=Apply1q

#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ewva/kernels.hpp"

namespace {

using ewva::Complex;

std::vector<Complex> random_state(int qubits) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  std::vector<Complex> v(std::size_t{1} << qubits);
  for (auto& z : v) z = {n(rng), n(rng)};
  return v;
}

constexpr double kS = std::numbers::sqrt2 / 2.0;
const ewva::Mat2 kH{Complex{kS}, Complex{kS}, Complex{kS}, Complex{-kS}};

template <auto Fn>
void Apply1q(benchmark::State& st) {
  const int q = static_cast<int>(st.range(0));
  auto v = random_state(q);
  for (auto _ : st) {
    Fn(v, static_cast<unsigned>(q / 2), kH);
    benchmark::DoNotOptimize(v.data());
  }
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations()) * static_cast<std::int64_t>(v.size() * sizeof(Complex)));
}

template <auto Fn>
void ControlledRz(benchmark::State& st) {
  const int q = static_cast<int>(st.range(0));
  auto v = random_state(q);
  const ewva::Mat2 rz{std::polar(1.0, -0.01), Complex{}, Complex{}, std::polar(1.0, 0.01)};
  for (auto _ : st) {
    Fn(v, 0u, static_cast<unsigned>(q - 1), rz);
    benchmark::DoNotOptimize(v.data());
  }
}

template <auto Fn>
void Inner(benchmark::State& st) {
  const int q = static_cast<int>(st.range(0));
  const auto a = random_state(q), b = random_state(q);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
}

}  // namespace

BENCHMARK(Apply1q<ewva::kernels::reference::apply_1q>)->Name("Apply1q/serial")->DenseRange(12, 22, 2);
BENCHMARK(Apply1q<ewva::kernels::apply_1q>)->Name("Apply1q/openmp")->DenseRange(12, 22, 2);
BENCHMARK(ControlledRz<ewva::kernels::reference::apply_controlled_1q>)->Name("ControlledRz/serial")->DenseRange(12, 22, 2);
BENCHMARK(ControlledRz<ewva::kernels::apply_controlled_1q>)->Name("ControlledRz/openmp")->DenseRange(12, 22, 2);
BENCHMARK(Inner<ewva::kernels::reference::inner>)->Name("Inner/serial")->DenseRange(12, 22, 2);
BENCHMARK(Inner<ewva::kernels::inner>)->Name("Inner/openmp")->DenseRange(12, 22, 2);

BENCHMARK_MAIN();
