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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qite {

using cplx = std::complex<double>;

/// Default qubit limit for dense (2^n x 2^n) matrix realisations.
inline constexpr unsigned kDefaultDenseLimit = 12;

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliOp op);
PauliOp pauli_from_char(char c);  // throws std::invalid_argument

/**
 * Tensor product of single-qubit Pauli operators.
 *
 * Qubit 0 is the leftmost character of the word and the most significant bit
 * of a computational-basis state index. This convention is shared by every
 * module (dense matrices, state vectors, circuits, networks).
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits) : ops_(n_qubits, PauliOp::I) {}
  explicit PauliString(std::vector<PauliOp> ops) : ops_(std::move(ops)) {}

  /// Parses a word such as "XIZY"; throws std::invalid_argument.
  static PauliString from_word(std::string_view word);

  std::size_t size() const { return ops_.size(); }
  PauliOp operator[](std::size_t q) const { return ops_[q]; }
  PauliOp& operator[](std::size_t q) { return ops_[q]; }
  const std::vector<PauliOp>& ops() const { return ops_; }

  /// Indices carrying a non-identity operator, ascending.
  std::vector<std::size_t> support() const;
  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  /// True when every operator is I or Z.
  bool is_diagonal() const;
  std::string word() const;

  /// Bit masks over basis-state indices of an n-qubit register.
  /// flip_mask: X or Y sites; phase_mask: Y or Z sites.
  std::uint64_t flip_mask() const;
  std::uint64_t phase_mask() const;
  std::size_t y_count() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliOp> ops_;
};

/// Applies P to the basis state |x>: P|x> = phase * |x ^ flip_mask>.
/// Returns the phase; the target index is x ^ p.flip_mask().
cplx pauli_phase(const PauliString& p, std::uint64_t x);

struct HamiltonianTerm {
  double coefficient = 0.0;
  PauliString string;
};

class Hamiltonian {
 public:
  Hamiltonian() = default;
  explicit Hamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  Hamiltonian(std::size_t n_qubits, std::vector<HamiltonianTerm> terms);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Appends a term; throws std::invalid_argument on width mismatch or a
  /// non-finite coefficient.
  void add(double coefficient, PauliString string);
  void add(double coefficient, std::string_view word) {
    add(coefficient, PauliString::from_word(word));
  }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<HamiltonianTerm> terms_;
};

/// One term per non-empty line: "<real coefficient> <pauli word>".
/// '#' starts a comment. Errors carry the 1-based line number.
Hamiltonian parse_hamiltonian(std::string_view text);
Hamiltonian load_hamiltonian(const std::string& path);
/// Inverse of parse_hamiltonian (17 significant digits, lossless).
std::string serialize_hamiltonian(const Hamiltonian& h);

/// The 3-site periodic transverse-field Ising chain at the critical point,
/// H = sum_i Z_i Z_{i+1} - sum_i X_i, generalised to n sites.
Hamiltonian transverse_ising_ring(std::size_t n_sites, double coupling = 1.0,
                                  double field = 1.0);

Eigen::MatrixXcd dense_matrix(const PauliString& p,
                              unsigned dense_limit = kDefaultDenseLimit);
Eigen::MatrixXcd dense_matrix(const Hamiltonian& h,
                              unsigned dense_limit = kDefaultDenseLimit);

// ---------------------------------------------------------------------------
// Basis rotations

/// H^x: the Hadamard gate. H^y: (1/sqrt2)[[-i, i], [1, 1]], chosen so that
/// Y = H^y Z H^y^dagger.
Eigen::Matrix2cd hx_matrix();
Eigen::Matrix2cd hy_matrix();
Eigen::Matrix2cd hy_dag_matrix();

enum class RotationKind : std::uint8_t { Hx, Hy, HyDag };

struct BasisRotation {
  RotationKind kind;
  std::size_t qubit;
  friend bool operator==(const BasisRotation&, const BasisRotation&) = default;
};

/**
 * Rotations mapping a Pauli string onto its Z-diagonal form.
 *
 * Gate lists are in circuit time order: `pre_gates` act before the diagonal
 * propagator, `post_gates` after it, so that as matrices
 *   P = U(post_gates) * diagonalized * U(pre_gates).
 * X sites get H^x on both sides; Y sites get H^y^dagger before and H^y after.
 */
struct BasisRotationLayer {
  std::vector<BasisRotation> pre_gates;
  std::vector<BasisRotation> post_gates;
  PauliString diagonalized;
};

BasisRotationLayer basis_rotation_layer(const PauliString& p);

/// Dense matrix of a time-ordered rotation list on n qubits.
Eigen::MatrixXcd rotation_matrix(const std::vector<BasisRotation>& gates,
                                 std::size_t n_qubits);

}  // namespace qite
