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

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qite/pauli.hpp"
#include "qite/rbm_decomp.hpp"

namespace qite {

namespace gates {

struct Hx {
  std::size_t qubit;
};
struct Hy {
  std::size_t qubit;
};
struct HyDag {
  std::size_t qubit;
};
struct CX {
  std::size_t control;
  std::size_t target;
};
/// exp(-i (angle/2) P), P over all circuit qubits.
struct PauliRotation {
  double angle;
  PauliString string;
};
struct Measure {
  std::size_t qubit;
  std::size_t clbit;
};
/// Keep the trajectory only if `clbit` reads `value` (0 is the sigma^z = +1
/// outcome, the state the ancilla is prepared in).
struct PostSelect {
  std::size_t clbit;
  int value = 0;
};
struct Reset {
  std::size_t qubit;
};

}  // namespace gates

using Gate = std::variant<gates::Hx, gates::Hy, gates::HyDag, gates::CX,
                          gates::PauliRotation, gates::Measure,
                          gates::PostSelect, gates::Reset>;

std::string gate_name(const Gate& g);

enum class Route { Rbm, Cx };

struct AncillaPolicy {
  enum class Mode { SingleReused, Pooled };
  Mode mode = Mode::SingleReused;
  std::size_t pool = 1;

  static AncillaPolicy single_reused() { return {}; }
  static AncillaPolicy pooled(std::size_t n);
  std::size_t capacity() const { return mode == Mode::Pooled ? pool : 1; }
};

/**
 * Gate-level circuit. Qubits 0..n_visible-1 are the system register, the
 * ancillas follow. Every ancilla starts in |0> and is returned to |0> by a
 * Reset after its post-selection.
 */
struct Circuit {
  std::size_t n_visible = 0;
  std::size_t n_ancilla = 0;
  std::size_t n_clbits = 0;
  std::vector<Gate> gates;
  /// Sum of ln(2A) over encodings (and -K for identity factors): with it the
  /// unnormalised post-selected action times exp(log_norm) is the exact
  /// product of propagator factors.
  double log_norm = 0.0;
  /// Basis-state averaged success probability of every encoding, in order.
  std::vector<double> encoding_success;

  std::size_t n_qubits() const { return n_visible + n_ancilla; }
  std::size_t n_encodings() const { return encoding_success.size(); }

  /// Appends `other`, renumbering its classical bits. Widths must agree.
  void append(const Circuit& other);
};

struct CircuitSummary {
  std::size_t qubits = 0;
  std::size_t ancillas = 0;
  std::size_t depth = 0;
  std::size_t hx = 0, hy = 0, hy_dag = 0, cx = 0, pauli_rotation = 0,
              measure = 0, post_select = 0, reset = 0;
  std::size_t measure_waves = 0;
};

/// Gate counts and ASAP depth (PostSelect is classical and takes no layer).
CircuitSummary summarize(const Circuit& c);

/// Structural checks: qubit/bit ranges, rotation widths, finite angles, every
/// PostSelect after its Measure, no use of a measured qubit before its Reset.
/// Throws std::logic_error.
void validate(const Circuit& c);

/**
 * One ancilla-mediated factor: the hidden unit `unit` (weights on visible
 * qubits, sigma_r given by `letters`) framed by basis rotations and an
 * optional CX ladder.
 */
struct Encoding {
  std::vector<BasisRotation> pre, post;
  std::vector<std::pair<std::size_t, std::size_t>> ladder;  // (control, target)
  HiddenUnit unit;
  PauliString letters;
  double log_norm = 0.0;  // ln(2A)
  double average_success = 1.0;

  bool uses_ladder() const { return !ladder.empty() || !pre.empty(); }
  /// Visible qubits touched by any gate of the encoding, ascending.
  std::vector<std::size_t> footprint() const;
};

/// Encodings realising exp(-k_i P_i) for a run of qubit-wise compatible
/// terms (each coefficient already multiplied by its time step). The
/// induced couplings are folded within the block. Identity contributions go
/// to `scalar_log_norm`.
std::vector<Encoding> rbm_block_encodings(
    const std::vector<HamiltonianTerm>& block, double& scalar_log_norm);

/// CX-ladder encoding of exp(-k P) (single-qubit terms use the RBM form).
std::vector<Encoding> cx_encodings(const HamiltonianTerm& scaled,
                                   double& scalar_log_norm);

/// Emits encodings in order, packing consecutive compatible ones into waves
/// of at most `policy.capacity()` ancillas. Ancilla slot k is circuit qubit
/// n_visible + first_ancilla + k.
Circuit schedule(std::size_t n_visible, const std::vector<Encoding>& encs,
                 double scalar_log_norm, const AncillaPolicy& policy,
                 std::size_t first_ancilla = 0);

Circuit encode_term_rbm(const HamiltonianTerm& term, double dtau,
                        std::size_t ancilla);
Circuit encode_term_cx(const HamiltonianTerm& term, double dtau,
                       std::size_t ancilla);

/**
 * Factor sequence of one Trotter step, each term carrying the coefficient
 * times its time step. Order 1: input order with dtau. Order 2: one-body
 * terms at dtau/2, all other terms at dtau, one-body terms at dtau/2.
 */
std::vector<HamiltonianTerm> trotter_sequence(const Hamiltonian& h, double dtau,
                                              int order);

Circuit trotter_step(const Hamiltonian& h, double dtau, int order, Route route,
                     const AncillaPolicy& policy);

/// n = tau_total/dtau Trotter steps; throws ConfigError unless n is an
/// integer within 1e-12.
Circuit build_qite_circuit(const Hamiltonian& h, double tau_total, double dtau,
                           int order, Route route, const AncillaPolicy& policy);

std::size_t trotter_step_count(double tau_total, double dtau);

/// True when the two strings carry the same letter on every shared qubit.
bool qubitwise_compatible(const PauliString& a, const PauliString& b);

}  // namespace qite
