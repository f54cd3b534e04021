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

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace qretro {

/*
 * Dense types, templated on the real scalar.
 */

template <typename Scalar>
using Ket = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using Operator = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using KetD = Ket<double>;
using OperatorD = Operator<double>;
using Amplitude = std::complex<double>;

/// Absolute tolerance used for every numeric comparison unless stated.
inline constexpr double kTolerance = 1e-9;
/// Eigenvalues below this are treated as zero in entropies.
inline constexpr double kEigenFloor = 1e-12;
/// Amplitudes below this are dropped from listings and histories.
inline constexpr double kAmplitudeFloor = 1e-12;
/// Desk-scale cap on the total register width.
inline constexpr unsigned kMaxTotalWidth = 24;

/// Sylvester-ordered Walsh-Hadamard transform on `qubits` qubits.
template <typename Scalar>
Operator<Scalar> hadamard(unsigned qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  const Scalar norm = std::pow(Scalar(2), -Scalar(qubits) / 2);
  Operator<Scalar> h(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const bool odd = __builtin_parityll(static_cast<unsigned long long>(r & c)) != 0;
      h(r, c) = odd ? -norm : norm;
    }
  }
  return h;
}

/// Inversion about the mean, 2|u><u| - I with |u> the uniform superposition.
template <typename Scalar>
Operator<Scalar> inversion_about_mean(unsigned qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Operator<Scalar> m = Operator<Scalar>::Constant(dim, dim, Scalar(2) / Scalar(dim));
  m.diagonal().array() -= Scalar(1);
  return m;
}

/// Matrix sending |i> to |map[i]>. Throws if `map` is not a bijection.
template <typename Scalar>
Operator<Scalar> permutation_matrix(std::span<const std::uint64_t> map) {
  const auto dim = static_cast<Eigen::Index>(map.size());
  Operator<Scalar> p = Operator<Scalar>::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto j = static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]);
    if (j >= dim || p.row(j).cwiseAbs().sum() != Scalar(0)) {
      throw std::invalid_argument("permutation map is not a bijection");
    }
    p(j, i) = Scalar(1);
  }
  return p;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = kTolerance) {
  if (u.rows() != u.cols()) return false;
  const auto gram = (u.adjoint() * u).eval();
  using Plain = typename Derived::PlainObject;
  return (gram - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Von Neumann entropy in bits of a Hermitian density matrix.
template <typename Derived>
typename Derived::RealScalar von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho,
                                                 double floor = kEigenFloor) {
  using Real = typename Derived::RealScalar;
  Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> solver(rho.derived(),
                                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigen-decomposition of the density matrix failed");
  }
  Real entropy(0);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Real lambda = solver.eigenvalues()(i);
    if (lambda > floor) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

/// Shannon entropy in bits, with 0 log 0 = 0.
template <typename Range>
double shannon_bits(const Range& probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace qretro
