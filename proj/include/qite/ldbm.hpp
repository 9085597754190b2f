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
#include <map>
#include <vector>

#include "qite/pauli.hpp"
#include "qite/statevector.hpp"

namespace qite {

/// Default hidden-unit limit for brute-force marginalisation (2^M terms).
inline constexpr unsigned kDefaultMarginalLimit = 20;

/**
 * Lateral-coupled unitary Boltzmann machine
 *
 *   Psi(z) = e^{log_norm} sum_h exp[i(sum a_i z_i + sum z_i W_ij h_j
 *                                   + sum_{j<k} h_j L_jk h_k + sum b_j h_j)].
 *
 * Lateral couplings are sparse (each unit keeps its neighbour map); severed
 * couplings are zeroed in place so unit indices stay stable.
 */
class LdbmNetwork {
 public:
  LdbmNetwork() = default;
  /// N visible qubits, no hidden units, a = 0: the uniform state |+...+>.
  explicit LdbmNetwork(std::size_t n_visible);

  std::size_t n_visible() const { return static_cast<std::size_t>(a_.size()); }
  std::size_t n_hidden() const { return static_cast<std::size_t>(b_.size()); }

  const Eigen::VectorXcd& a() const { return a_; }
  const Eigen::VectorXcd& b() const { return b_; }
  const Eigen::MatrixXcd& W() const { return W_; }
  cplx log_norm() const { return log_norm_; }

  cplx& a(std::size_t i) { return a_(Eigen::Index(i)); }
  cplx& b(std::size_t j) { return b_(Eigen::Index(j)); }
  cplx& W(std::size_t i, std::size_t j) {
    return W_(Eigen::Index(i), Eigen::Index(j));
  }
  void add_log_norm(cplx d) { log_norm_ += d; }

  cplx lateral(std::size_t j, std::size_t k) const;
  void set_lateral(std::size_t j, std::size_t k, cplx value);
  /// Non-zero lateral neighbours of unit j.
  const std::map<std::size_t, cplx>& neighbours(std::size_t j) const {
    return lat_[j];
  }
  /// Strictly upper-triangular dense copy of L.
  Eigen::MatrixXcd lateral_matrix() const;
  std::size_t lateral_count() const;

  /// Appends a hidden unit with bias `bias` and no couplings; returns index.
  std::size_t add_hidden(cplx bias);

  /// True when every parameter (and the phase of nothing else) is real.
  bool is_real(double tol = 0.0) const;

 private:
  Eigen::VectorXcd a_, b_;
  Eigen::MatrixXcd W_;
  std::vector<std::map<std::size_t, cplx>> lat_;
  cplx log_norm_ = 0.0;
};

/// Z configuration: bit q of the basis index (qubit 0 = MSB), z = +1 for 0.
using ZIndex = std::uint64_t;

/// Brute-force Gray-code marginalisation; throws ConfigError when
/// M > marginal_limit.
cplx amplitude(const LdbmNetwork& net, ZIndex z,
               unsigned marginal_limit = kDefaultMarginalLimit);

/// Exact marginalisation by variable elimination (min-degree order, scaled
/// tables). Cost is exponential only in the elimination width, so long
/// gate sequences with bounded connectivity stay cheap. Returns ln Psi(z).
cplx log_amplitude_contracted(const LdbmNetwork& net, ZIndex z,
                              unsigned max_width = 22);

/// All 2^N unnormalised amplitudes (including e^{log_norm}).
Eigen::VectorXcd raw_amplitudes(const LdbmNetwork& net,
                                unsigned marginal_limit = kDefaultMarginalLimit);

/// Normalised state vector. `discarded_log_norm` (optional) receives ln of
/// the removed norm. Small nets are summed directly, larger ones contracted.
StateVector statevector(const LdbmNetwork& net,
                        double* discarded_log_norm = nullptr,
                        unsigned marginal_limit = kDefaultMarginalLimit);

// ---------------------------------------------------------------------------
// Gate absorption. Every rule returns a new network whose unnormalised
// amplitudes equal G applied to the old ones (norm factors in log_norm).

LdbmNetwork apply_hx(const LdbmNetwork& net, std::size_t l);
LdbmNetwork apply_hy(const LdbmNetwork& net, std::size_t l);
LdbmNetwork apply_hy_dag(const LdbmNetwork& net, std::size_t l);
/// diag(e^{i phi}, e^{-i phi}) on qubit l.
LdbmNetwork apply_rz(const LdbmNetwork& net, std::size_t l, double phi);
/// exp(-i phi Z_l1 Z_l2).
LdbmNetwork apply_rzz(const LdbmNetwork& net, std::size_t l1, std::size_t l2,
                      double phi);
/// exp(-dtau c P) for a Z-diagonal term via hidden units.
LdbmNetwork apply_diagonal_imaginary(const LdbmNetwork& net,
                                     const HamiltonianTerm& term, double dtau);
/// exp(-dtau c P) for any Pauli term (basis rotations around the diagonal
/// form).
LdbmNetwork apply_term_imaginary(const LdbmNetwork& net,
                                 const HamiltonianTerm& term, double dtau);

/// |0...0> = H^x on every qubit of the uniform net.
LdbmNetwork zero_state_network(std::size_t n);
/// Computational basis state from a bitstring (qubit 0 first).
LdbmNetwork basis_state_network(std::string_view bits);

// ---------------------------------------------------------------------------

/**
 * Three-layer network without intra-layer or visible-deep couplings
 *
 *   Psi(z) = e^{log_norm} sum_{h,d} exp[i(a.z + z W h + b.h + h W' d + b'.d)].
 */
struct DbmNetwork {
  Eigen::VectorXcd a, b, b_deep;
  Eigen::MatrixXcd W;       // N x M
  Eigen::MatrixXcd W_deep;  // M x M'
  cplx log_norm = 0.0;

  std::size_t n_visible() const { return std::size_t(a.size()); }
  std::size_t n_hidden() const { return std::size_t(b.size()); }
  std::size_t n_deep() const { return std::size_t(b_deep.size()); }
};

/// Sums the hidden layer analytically and the deep layer by enumeration.
cplx amplitude(const DbmNetwork& net, ZIndex z,
               unsigned marginal_limit = kDefaultMarginalLimit);
Eigen::VectorXcd raw_amplitudes(const DbmNetwork& net,
                                unsigned marginal_limit = kDefaultMarginalLimit);

/**
 * Rewrites an L-DBM as a DBM with the same amplitudes. Units without
 * laterals stay in the hidden layer; every unit with a lateral becomes deep.
 * Each visible coupling of a deep unit and each lateral edge is replaced by
 * a new hidden unit through e^{i x y W} = (e^{-iW}/2) sum_h exp(-i Wt (x+y) h)
 * with cos(2 Wt) = e^{2iW}. Throws std::domain_error on the arccos branch
 * points (W a non-zero multiple of pi/2).
 */
DbmNetwork ldbm_to_dbm(const LdbmNetwork& net);

}  // namespace qite
