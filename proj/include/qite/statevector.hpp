// Copyright 2026 The qite-rbm Authors
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

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qite/pauli.hpp"

namespace qite {

/// Dense 2^n amplitude vector; qubit 0 is the most significant index bit.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n_qubits);  // |0...0>
  StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector zero(std::size_t n) { return StateVector(n); }
  static StateVector plus(std::size_t n);
  /// Bitstring such as "010", qubit 0 first.
  static StateVector basis(std::string_view bits);

  std::size_t n_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  cplx operator[](std::uint64_t x) const {
    return amp_(static_cast<Eigen::Index>(x));
  }

  double norm() const { return amp_.norm(); }
  /// Rescales to unit norm and returns the previous norm (0 left untouched).
  double normalize();

  std::uint64_t bit(std::size_t q) const {
    return std::uint64_t{1} << (n_ - 1 - q);
  }

  void apply_1q(std::size_t q, const Eigen::Matrix2cd& u);
  void apply_cx(std::size_t control, std::size_t target);
  void apply_x(std::size_t q);
  /// In-place P|psi>.
  void apply_pauli(const PauliString& p);
  /// exp(-i theta/2 P)|psi>.
  void apply_pauli_rotation(double theta, const PauliString& p);
  /// psi <- psi - t P psi (one non-unitary factor up to cosh scaling).
  void apply_pauli_axpy(double t, const PauliString& p);

  /// Probability weight of qubit q reading 1 (unnormalised state allowed).
  double weight_one(std::size_t q) const;
  /// Zeroes the amplitudes where q != value; returns the kept weight.
  double project(std::size_t q, int value);

  /// <psi|P|psi> (complex; imaginary part vanishes for Hermitian P).
  cplx expectation(const PauliString& p) const;

  /// Drops the trailing `k` qubits, which must be in |0...0>. Throws
  /// std::logic_error if more than `tol` of the weight lives elsewhere.
  StateVector take_leading(std::size_t n_keep, double tol = 1e-10) const;
  /// Kronecker product |this> (x) |0...0>_k.
  StateVector padded(std::size_t k) const;

 private:
  std::size_t n_ = 0;
  Eigen::VectorXcd amp_;
};

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace qite
