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

#include "ewva/random.hpp"

#include "ewva/errors.hpp"

namespace ewva {
namespace {

std::vector<Complex> gaussian_amplitudes(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(dim);
  for (auto& a : amps) a = {normal(rng), normal(rng)};
  return amps;
}

// Removes the components along an orthonormal set, twice for stability.
Ket orthogonalize(Ket v, std::span<const Ket> onb) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Ket& e : onb) v = v - e.scaled(inner(e, v));
  }
  return v;
}

}  // namespace

Ket random_ket(const Register& reg, Rng& rng) {
  return Ket(reg, gaussian_amplitudes(std::size_t{1} << reg.size(), rng)).normalized();
}

Operator random_hermitian(const Register& reg, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg.size());
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  return Operator(reg, (g + g.adjoint()) * 0.5);
}

Ket random_ket_orthogonal_to(const Register& reg, std::span<const Ket> avoid, Rng& rng) {
  // Orthonormalize the constraints first so a single projection suffices.
  std::vector<Ket> onb;
  for (const Ket& a : avoid) {
    Ket v = orthogonalize(a, onb);
    if (v.norm() > 1e-12) onb.push_back(v.normalized());
  }
  if (onb.size() >= (std::size_t{1} << reg.size())) {
    throw InvalidArgument("constraints span the whole space");
  }
  for (;;) {
    Ket v = orthogonalize(Ket(reg, gaussian_amplitudes(std::size_t{1} << reg.size(), rng)), onb);
    if (v.norm() > 1e-6) return v.normalized();
  }
}

std::vector<Ket> random_completion(const Ket& first, Rng& rng) {
  std::vector<Ket> basis{first.normalized()};
  const std::size_t dim = first.dim();
  while (basis.size() < dim) basis.push_back(random_ket_orthogonal_to(first.reg(), basis, rng));
  return basis;
}

}  // namespace ewva
