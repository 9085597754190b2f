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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qite/circuit.hpp"
#include "qite/ldbm.hpp"
#include "qite/pauli.hpp"
#include "qite/serialize.hpp"
#include "qite/statevector.hpp"

namespace qite::app {

enum class Mode { Exact, Shots };

struct RunConfig {
  std::string hamiltonian_path;
  std::vector<double> taus{1.0};
  double dtau = 0.01;
  int order = 2;
  Route route = Route::Rbm;
  AncillaPolicy ancilla;
  std::size_t shots = 100000;
  std::size_t batches = 100;
  std::uint64_t seed = 20240611;
  std::string init = "plus";
  std::string out;
  Mode mode = Mode::Exact;
  unsigned threads = 0;

  /// Throws ConfigError on inconsistent settings (step counts, shot split).
  void validate() const;
};

Route parse_route(const std::string& s);
AncillaPolicy parse_ancilla(const std::string& s);  // single | pooled:N
Mode parse_mode(const std::string& s);
/// Comma-separated list of non-negative reals.
std::vector<double> parse_tau_list(const std::string& s);
/// plus | zero | basis:<bits> | json:<path>
StateVector parse_initial_state(const std::string& spec, std::size_t n_qubits);

struct EvolveRow {
  double tau = 0.0;
  double E_mean = 0.0, E_err = 0.0;
  double ZZ_mean = 0.0, ZZ_err = 0.0;
  double X_mean = 0.0, X_err = 0.0;
  double acceptance = 1.0;
  double acceptance_model = 1.0;
  std::size_t effective_samples = 0;
  // Exact mode only.
  double E_oracle = 0.0, E_trotter = 0.0;
  std::vector<std::string> warnings;
};

std::string csv_header(Mode mode);
std::string csv_row(const EvolveRow& row, Mode mode);

/// Energy split into the Z-type and X-type parts of H (plus identity terms
/// in the total).
struct EnergyParts {
  double total = 0.0, z_part = 0.0, x_part = 0.0;
};
EnergyParts energy_parts(const StateVector& psi, const Hamiltonian& h);

/// One checkpoint of cmd_evolve.
EvolveRow evolve_checkpoint(const RunConfig& cfg, const Hamiltonian& h,
                            const StateVector& psi0, double tau,
                            std::size_t checkpoint_index);

/// Runs every checkpoint, streaming CSV rows (flushed per row) to `csv`.
std::vector<EvolveRow> cmd_evolve(const RunConfig& cfg, const Hamiltonian& h,
                                  std::ostream& csv, std::ostream& log);

struct DemoOptions {
  std::vector<double> taus;
  std::size_t shots = 100000;
  std::size_t batches = 100;
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
};
DemoOptions ising_demo_defaults(bool paper_scale);

/// Three-site critical transverse Ising ring; CSV rows plus a summary
/// document (parameters, spectrum, exact cumulative success per tau).
json cmd_ising_demo(const DemoOptions& opts, std::ostream& csv,
                    std::ostream& log);

/// Decomposition of exp(-K P) for one Pauli word, predicted success
/// probabilities and, with `verify`, the dense-oracle max entrywise error.
json cmd_decompose(const std::string& word, double K, bool verify);

struct LdbmRun {
  LdbmNetwork net;
  std::vector<json> events;  // dump / to-dbm output, in script order
};

/// Executes an op script (hx l | hy l | hydag l | rz l phi | rzz l1 l2 phi |
/// imag WORD K | to-dbm | dump | repeat N ... end). Throws ParseError with
/// the line number on malformed or unknown ops.
LdbmRun run_ldbm_script(const std::string& script, LdbmNetwork net);
LdbmNetwork initial_network(const std::string& spec, std::size_t n_qubits);
/// Final report: statevector, unit counts, optional energy.
json ldbm_report(const LdbmNetwork& net, const Hamiltonian* h);

}  // namespace qite::app
