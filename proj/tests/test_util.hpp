// Copyright 2026 The qretro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "qretro/linalg.hpp"

namespace qretro::testing {

/// Plain Kronecker product, first factor most significant.
inline OperatorD kron(const OperatorD& a, const OperatorD& b) {
  OperatorD out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline OperatorD identity(Eigen::Index dim) { return OperatorD::Identity(dim, dim); }

// 2x2 Hadamard from its entries, independent of the library's Sylvester builder.
inline OperatorD h1() {
  OperatorD h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

/// |x>|y> -> |x>|y xor f(x)> on (x_bits + y_bits) qubits, x most significant.
template <typename F>
OperatorD xor_oracle(unsigned x_bits, unsigned y_bits, F f) {
  const Eigen::Index dim = Eigen::Index{1} << (x_bits + y_bits);
  OperatorD u = OperatorD::Zero(dim, dim);
  for (std::uint64_t x = 0; x < (1ULL << x_bits); ++x)
    for (std::uint64_t y = 0; y < (1ULL << y_bits); ++y) {
      const std::uint64_t in = (x << y_bits) | y;
      const std::uint64_t out = (x << y_bits) | (y ^ f(x));
      u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;
    }
  return u;
}

inline KetD random_ket(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  KetD psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = Amplitude(g(rng), g(rng));
  return psi.normalized();
}

inline double max_abs(const OperatorD& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qretro::testing
