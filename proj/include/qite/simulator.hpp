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
#include <cstdint>
#include <vector>

#include "qite/circuit.hpp"
#include "qite/pauli.hpp"
#include "qite/statevector.hpp"

namespace qite {

struct ExactRunResult {
  StateVector state;  // visible register, unit norm
  double cumulative_success = 1.0;
  double log_success = 0.0;  // ln cumulative_success (no underflow)
  double log_norm = 0.0;     // circuit log_norm passthrough
  std::size_t post_selections = 0;
};

/**
 * Deterministic post-selected execution. Each PostSelect projects onto the
 * required outcome and multiplies the branch probability into the cumulative
 * success. `psi0` covers the visible register; ancillas start in |0>.
 * Throws ZeroWeightError when a branch probability drops below 1e-300.
 */
ExactRunResult run_exact(const Circuit& c, const StateVector& psi0,
                         unsigned dense_limit = kDefaultDenseLimit);

struct ShotOutcome {
  bool accepted = false;
  std::uint64_t sample = 0;     // terminal visible bitstring, qubit 0 = MSB
  std::vector<std::uint8_t> bits;  // classical register (when recorded)
};

struct ShotOptions {
  /// Terminal measurement basis per visible qubit (I is read as Z).
  PauliString basis;
  bool record_bits = false;
};

/**
 * Independent stochastic shots on one Philox stream seeded with `seed`.
 * A shot stops at its first failed PostSelect (flagged, not resampled).
 */
std::vector<ShotOutcome> run_shots(const Circuit& c, const StateVector& psi0,
                                   std::size_t n_shots, std::uint64_t seed,
                                   const ShotOptions& opts,
                                   unsigned dense_limit = kDefaultDenseLimit);

/// `n_batches` equal batches, batch i on seed ^ i, spread over up to
/// `threads` workers (0: hardware concurrency). Output is schedule-independent.
std::vector<std::vector<ShotOutcome>> run_shot_batches(
    const Circuit& c, const StateVector& psi0, std::size_t n_shots,
    std::size_t n_batches, std::uint64_t seed, const ShotOptions& opts,
    unsigned threads = 0, unsigned dense_limit = kDefaultDenseLimit);

/// <psi|H|psi>, term by term. Throws if the imaginary part exceeds 1e-10.
double expectation(const StateVector& psi, const Hamiltonian& h);

/// Terms sharing one terminal basis.
struct MeasurementGroup {
  std::vector<HamiltonianTerm> terms;
  PauliString basis;  // per-qubit letter, I where unconstrained
};

/// Greedy qubit-wise commuting grouping in input order.
std::vector<MeasurementGroup> measurement_groups(const Hamiltonian& h);

/// Eigenvalue (+-1) of a Pauli string on a terminal sample taken in a
/// compatible basis.
int sample_eigenvalue(const PauliString& p, std::uint64_t sample);

struct GroupEstimate {
  std::vector<double> term_means;  // <P_k>, one per group term
  double energy = 0.0;             // sum_k c_k <P_k>
  std::size_t accepted = 0;
};

/// Sample means over accepted shots. Throws std::runtime_error("no accepted
/// samples") if none were accepted.
GroupEstimate expectation_from_samples(const std::vector<ShotOutcome>& shots,
                                       const MeasurementGroup& group);

/// Normalised exp(-tau H) psi0 via Hermitian eigendecomposition.
StateVector imaginary_time_oracle(const Hamiltonian& h, double tau,
                                  const StateVector& psi0,
                                  unsigned dense_limit = kDefaultDenseLimit);

/// Normalised product of exp(-k P) factors in the trotter_sequence order.
StateVector trotterized_oracle(const Hamiltonian& h, double tau, double dtau,
                               int order, const StateVector& psi0);

/// Minimum eigenvalue and spectral gap of the dense Hamiltonian.
struct Spectrum {
  double ground_energy = 0.0;
  double gap = 0.0;
  StateVector ground_state;
};
Spectrum exact_spectrum(const Hamiltonian& h,
                        unsigned dense_limit = kDefaultDenseLimit);

}  // namespace qite
