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

// Auxiliary-field (hidden unit) identities for non-unitary propagator factors
//
//   A * sum_{h=+-1} exp[-i h (C + sum_r W_r sigma_r)]
//       = exp[-K sigma_1...sigma_M - sum_{P} K_P prod_{j in P} sigma_j],
//
// where the K_P (|P| < M) are the couplings induced as a side effect. The
// sigma_r are any commuting single-qubit Paulis on distinct qubits; every
// routine here works on the Z-eigenvalue picture z_r = +-1.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qite/pauli.hpp"

namespace qite {

/// Upper bound for the 2^M-point Walsh transform in induced_couplings.
inline constexpr unsigned kMaxWalshOrder = 14;

struct HiddenUnit {
  double bias = 0.0;  // C (the W_0 of the three-body identity)
  std::vector<std::pair<std::size_t, double>> weights;  // (visible, W_r)
};

/**
 * One hidden unit realising exp(-K P) up to the induced lower-order terms.
 *
 * Sign convention: exp(log_norm) * sum_h exp[-ih(C + sum W_r z_r)]
 * = exp(-K P - sum_induced K_i P_i). The target factor on its own is thus
 * recovered by multiplying with exp(+sum_induced K_i P_i).
 *
 * A decomposition without hidden units is a pure scalar exp(log_norm).
 */
struct Decomposition {
  double log_norm = 0.0;  // ln A
  std::vector<HiddenUnit> hidden_units;
  std::vector<HamiltonianTerm> induced_terms;

  bool empty() const { return hidden_units.empty() && log_norm == 0.0; }
};

/// e^{-K sigma}: weight W on local qubit 0, bias sW.
Decomposition decompose_one_body(double K);
/// e^{-K sigma_0 sigma_1}: weights (W, sW), no bias, nothing induced.
Decomposition decompose_two_body(double K);
/// e^{-K sigma_0 sigma_1 sigma_2}: equal weights, bias sW; induces three one-
/// and three two-body couplings. K = 0 gives an empty decomposition.
Decomposition decompose_three_body(double K);
/// e^{-K sigma_0..sigma_3}: weights (W, W, W, sW), no bias; induces exactly
/// the six two-body couplings. K = 0 gives an empty decomposition.
Decomposition decompose_four_body(double K);

struct GeneralWeight {
  double weight = 0.0;     // W >= 0
  bool sign_flip = false;  // true for K < 0: one coupling is -W
  double bias = 0.0;       // C: 0 for even M, +-W for odd M
};

/**
 * Canonical hidden unit for the M-body coupling K (any M >= 1).
 *
 * Even M: C = 0 and all weights W with the last one negated when K < 0.
 * Odd M: C = +-W (negated when K < 0), which reduces to the even case with
 * M + 1 spins. W solves the alternating binomial sum
 *   2^{-M'} sum_k (-1)^k binom(M', k) ln cos((2k - M') W) = -|K|
 * on [0, pi/(2M') - 1e-9) by bisection with a secant finish.
 * Throws std::domain_error when |K| lies beyond that bracket.
 */
GeneralWeight solve_general_weight(unsigned M, double K);

/// The alternating sum above as a function of W (M' = effective order).
double alternating_coupling_sum(unsigned effective_order, double W);

/// Hidden unit over local qubits 0..M-1 built from a solved weight.
HiddenUnit general_unit(unsigned M, const GeneralWeight& w);
/// Full decomposition (norm and induced terms via induced_couplings).
Decomposition decompose_general(unsigned M, double K);

/**
 * Walsh transform of L(z) = ln[2 cos(C + sum_r W_r z_r)] over {+-1}^M.
 *
 * Returns all 2^M couplings indexed by subset mask (bit r set <=> visible r
 * in P, r = position in the unit's weight list); entry 0 is K_emptyset = ln A.
 * Throws std::domain_error("coupling at domain boundary") when some cosine
 * argument makes cos <= 0.
 */
std::vector<double> induced_couplings(unsigned M, const HiddenUnit& unit);

/// Forward evaluation: -sum_P K_P prod_{j in P} z_j for every configuration.
std::vector<double> coupling_field(unsigned M, std::span<const double> K);

/**
 * Decomposes exp(-tau H) for a Z-diagonal Hamiltonian into hidden units.
 *
 * Terms are processed from the highest interaction order down; each emitted
 * unit's induced couplings are subtracted from the remaining coupling table.
 * Orders <= 4 use the closed forms, higher orders the general solver.
 * Identity terms contribute a unit-less decomposition with log_norm = -tau*c.
 * Weights refer to the Hamiltonian's qubit indices.
 */
std::vector<Decomposition> decompose_diagonal_hamiltonian(const Hamiltonian& h,
                                                          double tau);

// ---------------------------------------------------------------------------
// Success probabilities

enum class SuccessKind { TwoBody, ThreeBody };

struct SuccessModel {
  SuccessKind kind = SuccessKind::TwoBody;
  double coupling = 0.0;  // |K|
  int sign = 1;
};

/**
 * Post-selection success probability given occupation probabilities.
 *
 * TwoBody (also one-body): alphas = {alpha}, P = 1 - (1 - e^{-4|K|}) alpha.
 * ThreeBody: alphas = {alpha_2, alpha_4},
 *   P = 1 - sin^2(2W) alpha_2 - sin^2(4W) alpha_4.
 * Throws std::invalid_argument for alphas outside [0, 1].
 */
double success_probability(const SuccessModel& model,
                           std::span<const double> alphas);
/// Average over all basis states: (1 + e^{-4|K|})/2, or
/// [3 + 4 cos^2(2W) + cos^2(4W)]/8.
double average_success_probability(const SuccessModel& model);
/// Basis-state average 2^{-M} sum_z cos^2(C + sum W_r z_r) for any unit.
double average_success_probability(const HiddenUnit& unit);

/// Three-body weight W = (1/2) atan[(1 - e^{-8|K|})^{1/4}].
double three_body_weight(double K);

// ---------------------------------------------------------------------------
// Dense reconstruction (verification support)

/// Dense A * 2cos(C + sum W_r sigma_r) (the marginalised hidden unit; the
/// identity for a unit-less decomposition), with each weight's sigma taken
/// from `letters`. Induced words are mapped onto `letters` as well.
Eigen::MatrixXcd marginalized_dense(const Decomposition& d,
                                    const PauliString& letters,
                                    unsigned dense_limit = kDefaultDenseLimit);
/// Ordered product of marginalized_dense over a folded decomposition list,
/// equal to exp(-tau H) for the output of decompose_diagonal_hamiltonian.
Eigen::MatrixXcd marginalized_dense(const std::vector<Decomposition>& ds,
                                    const PauliString& letters,
                                    unsigned dense_limit = kDefaultDenseLimit);
/// marginalized_dense(d) * exp(+sum induced): the single target factor.
Eigen::MatrixXcd reconstruct_dense(const Decomposition& d,
                                   const PauliString& letters,
                                   unsigned dense_limit = kDefaultDenseLimit);

/// Returns a copy of `d` with weights and induced words mapped from local
/// indices 0..k-1 onto `qubits` of an n-qubit register, using `letters`.
Decomposition embed(const Decomposition& d,
                    const std::vector<std::size_t>& qubits,
                    const PauliString& letters);

}  // namespace qite
