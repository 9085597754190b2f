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


// Independent reference implementations used by the tests. Nothing here
// calls into the library except for plain data accessors.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qite/ldbm.hpp"
#include "qite/pauli.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline MatrixXcd pauli(char c) {
  MatrixXcd m(2, 2);
  const cplx i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

/// Textbook Kronecker product, leftmost letter = most significant factor.
inline MatrixXcd pauli_word(const std::string& w) {
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (char c : w) m = kron(m, pauli(c));
  return m;
}

inline MatrixXcd hamiltonian(const qite::Hamiltonian& h) {
  const auto dim = Eigen::Index{1} << h.n_qubits();
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coefficient * pauli_word(t.string.word());
  return m;
}

/// exp(-t H) for Hermitian H through its eigendecomposition.
inline MatrixXcd expm_hermitian(const MatrixXcd& H, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  const Eigen::VectorXd ev = (-t * es.eigenvalues().array()).exp();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(-i theta/2 H) for Hermitian H.
inline MatrixXcd expm_unitary(const MatrixXcd& H, double theta) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  VectorXcd ev(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    ev(k) = std::exp(cplx(0, -theta / 2) * es.eigenvalues()(k));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

/// Single-qubit gate on qubit q of n.
inline MatrixXcd embed1(const MatrixXcd& u, std::size_t q, std::size_t n) {
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k)
    m = kron(m, k == q ? u : MatrixXcd(MatrixXcd::Identity(2, 2)));
  return m;
}

inline MatrixXcd hadamard() {
  MatrixXcd m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

inline MatrixXcd hy() {
  MatrixXcd m(2, 2);
  m << cplx(0, -1), cplx(0, 1), 1, 1;
  return m / std::sqrt(2.0);
}

inline double fidelity(const VectorXcd& a, const VectorXcd& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

inline VectorXcd random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd v(Eigen::Index{1} << n);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cplx(g(rng), g(rng));
  return v.normalized();
}

inline std::string random_word(std::size_t n, std::mt19937_64& rng,
                               bool non_identity = true) {
  static const char kL[] = "IXYZ";
  std::uniform_int_distribution<int> d(0, 3);
  for (;;) {
    std::string w;
    for (std::size_t k = 0; k < n; ++k) w.push_back(kL[d(rng)]);
    if (!non_identity || w.find_first_not_of('I') != std::string::npos)
      return w;
  }
}

/// Direct sum over all hidden configurations of the L-DBM amplitude.
inline VectorXcd ldbm_amplitudes(const qite::LdbmNetwork& net) {
  const std::size_t n = net.n_visible(), m = net.n_hidden();
  const Eigen::MatrixXcd L = net.lateral_matrix();
  VectorXcd out(Eigen::Index{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (x >> (n - 1 - i)) & 1 ? -1 : 1;
    cplx total = 0.0;
    for (std::uint64_t hc = 0; hc < (std::uint64_t{1} << m); ++hc) {
      std::vector<double> h(m);
      for (std::size_t j = 0; j < m; ++j) h[j] = (hc >> j) & 1 ? -1 : 1;
      cplx e = 0.0;
      for (std::size_t i = 0; i < n; ++i) e += net.a()(Eigen::Index(i)) * z[i];
      for (std::size_t j = 0; j < m; ++j) {
        e += net.b()(Eigen::Index(j)) * h[j];
        for (std::size_t i = 0; i < n; ++i)
          e += z[i] * net.W()(Eigen::Index(i), Eigen::Index(j)) * h[j];
        for (std::size_t k = j + 1; k < m; ++k)
          e += h[j] * L(Eigen::Index(j), Eigen::Index(k)) * h[k];
      }
      total += std::exp(cplx(0, 1) * e);
    }
    out(Eigen::Index(x)) = std::exp(net.log_norm()) * total;
  }
  return out;
}

}  // namespace oracle
