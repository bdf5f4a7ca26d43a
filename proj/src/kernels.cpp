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

#include "ewva/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ewva/tolerances.hpp"

namespace ewva::kernels {
namespace {

using Index = std::int64_t;

// Inserts a zero bit at position `bit` of `i`.
inline Index insert_zero(Index i, unsigned bit) {
  const Index low = i & ((Index{1} << bit) - 1);
  return ((i >> bit) << (bit + 1)) | low;
}

struct DenseLayout {
  std::vector<unsigned> sorted_bits;
  std::vector<Index> offsets;  // offsets[j] = deposit of local index j
};

DenseLayout make_layout(std::span<const unsigned> bits) {
  DenseLayout layout;
  layout.sorted_bits.assign(bits.begin(), bits.end());
  std::sort(layout.sorted_bits.begin(), layout.sorted_bits.end());
  const std::size_t local = std::size_t{1} << bits.size();
  layout.offsets.resize(local);
  for (std::size_t j = 0; j < local; ++j) {
    Index off = 0;
    for (std::size_t b = 0; b < bits.size(); ++b) {
      if ((j >> b) & 1U) off |= Index{1} << bits[b];
    }
    layout.offsets[j] = off;
  }
  return layout;
}

inline Index group_base(Index g, const std::vector<unsigned>& sorted_bits) {
  for (unsigned b : sorted_bits) g = insert_zero(g, b);
  return g;
}

inline bool parallel_worthy(std::size_t n) { return n >= tol::kParallelMinDim; }

}  // namespace

void apply_1q(std::span<Complex> amps, unsigned bit, const Mat2& m) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << bit;
  Complex* a = amps.data();
#pragma omp parallel for if (parallel_worthy(amps.size())) schedule(static)
  for (Index g = 0; g < half; ++g) {
    const Index i0 = insert_zero(g, bit);
    const Index i1 = i0 | stride;
    const Complex x0 = a[i0];
    const Complex x1 = a[i1];
    a[i0] = m[0] * x0 + m[1] * x1;
    a[i1] = m[2] * x0 + m[3] * x1;
  }
}

void apply_controlled_1q(std::span<Complex> amps, unsigned control, unsigned target,
                         const Mat2& m) {
  const Index quarter = static_cast<Index>(amps.size() / 4);
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const Index cmask = Index{1} << control;
  const Index tmask = Index{1} << target;
  Complex* a = amps.data();
#pragma omp parallel for if (parallel_worthy(amps.size())) schedule(static)
  for (Index g = 0; g < quarter; ++g) {
    const Index i0 = insert_zero(insert_zero(g, lo), hi) | cmask;
    const Index i1 = i0 | tmask;
    const Complex x0 = a[i0];
    const Complex x1 = a[i1];
    a[i0] = m[0] * x0 + m[1] * x1;
    a[i1] = m[2] * x0 + m[3] * x1;
  }
}

void apply_dense(std::span<Complex> amps, std::span<const unsigned> bits,
                 std::span<const Complex> matrix) {
  const DenseLayout layout = make_layout(bits);
  const std::size_t local = layout.offsets.size();
  const Index groups = static_cast<Index>(amps.size() / local);
  Complex* a = amps.data();
  const Complex* m = matrix.data();
#pragma omp parallel if (parallel_worthy(amps.size()))
  {
    std::vector<Complex> in(local), out(local);
#pragma omp for schedule(static)
    for (Index g = 0; g < groups; ++g) {
      const Index base = group_base(g, layout.sorted_bits);
      for (std::size_t j = 0; j < local; ++j) in[j] = a[base + layout.offsets[j]];
      for (std::size_t r = 0; r < local; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < local; ++c) acc += m[c * local + r] * in[c];
        out[r] = acc;
      }
      for (std::size_t j = 0; j < local; ++j) a[base + layout.offsets[j]] = out[j];
    }
  }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  double re = 0.0;
  double im = 0.0;
  const Index n = static_cast<Index>(a.size());
#pragma omp parallel for if (parallel_worthy(a.size())) reduction(+ : re, im) schedule(static)
  for (Index i = 0; i < n; ++i) {
    const Complex t = std::conj(a[i]) * b[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

double norm2(std::span<const Complex> a) {
  double s = 0.0;
  const Index n = static_cast<Index>(a.size());
#pragma omp parallel for if (parallel_worthy(a.size())) reduction(+ : s) schedule(static)
  for (Index i = 0; i < n; ++i) s += std::norm(a[i]);
  return s;
}

double project_bit(std::span<Complex> amps, unsigned bit, int outcome) {
  const Index n = static_cast<Index>(amps.size());
  const Index mask = Index{1} << bit;
  const Index keep = outcome ? mask : 0;
  Complex* a = amps.data();
  double kept = 0.0;
#pragma omp parallel for if (parallel_worthy(amps.size())) reduction(+ : kept) schedule(static)
  for (Index i = 0; i < n; ++i) {
    if ((i & mask) == keep) {
      kept += std::norm(a[i]);
    } else {
      a[i] = Complex{};
    }
  }
  return kept;
}

namespace reference {

void apply_1q(std::span<Complex> amps, unsigned bit, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & stride) continue;
    const Complex x0 = amps[i];
    const Complex x1 = amps[i | stride];
    amps[i] = m[0] * x0 + m[1] * x1;
    amps[i | stride] = m[2] * x0 + m[3] * x1;
  }
}

void apply_controlled_1q(std::span<Complex> amps, unsigned control, unsigned target,
                         const Mat2& m) {
  const std::size_t c = std::size_t{1} << control;
  const std::size_t t = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(i & c) || (i & t)) continue;
    const Complex x0 = amps[i];
    const Complex x1 = amps[i | t];
    amps[i] = m[0] * x0 + m[1] * x1;
    amps[i | t] = m[2] * x0 + m[3] * x1;
  }
}

void apply_dense(std::span<Complex> amps, std::span<const unsigned> bits,
                 std::span<const Complex> matrix) {
  const std::size_t local = std::size_t{1} << bits.size();
  std::size_t mask = 0;
  for (unsigned b : bits) mask |= std::size_t{1} << b;
  std::vector<Complex> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t row = 0;
    for (std::size_t b = 0; b < bits.size(); ++b) row |= ((i >> bits[b]) & 1U) << b;
    const std::size_t rest = i & ~mask;
    Complex acc{};
    for (std::size_t col = 0; col < local; ++col) {
      std::size_t j = rest;
      for (std::size_t b = 0; b < bits.size(); ++b) j |= ((col >> b) & 1U) << bits[b];
      acc += matrix[col * local + row] * amps[j];
    }
    out[i] = acc;
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const Complex> a) {
  double s = 0.0;
  for (const Complex& x : a) s += std::norm(x);
  return s;
}

double project_bit(std::span<Complex> amps, unsigned bit, int outcome) {
  double kept = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (static_cast<int>((i >> bit) & 1U) == outcome) {
      kept += std::norm(amps[i]);
    } else {
      amps[i] = Complex{};
    }
  }
  return kept;
}

}  // namespace reference
}  // namespace ewva::kernels
