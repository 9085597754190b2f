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


#include <catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qite/circuit.hpp"
#include "qite/errors.hpp"
#include "qite/simulator.hpp"

using namespace qite;

namespace {

ShotOptions z_basis(std::size_t n) {
  ShotOptions o;
  o.basis = PauliString::from_word(std::string(n, 'Z'));
  return o;
}

}  // namespace

TEST_CASE("shot statistics follow the exact post-selected state") {
  const Hamiltonian h = transverse_ising_ring(3);
  const Circuit c = build_qite_circuit(h, 0.1, 0.05, 2, Route::Rbm,
                                       AncillaPolicy::single_reused());
  const StateVector psi0 = StateVector::basis("010");
  const auto exact = run_exact(c, psi0);
  const std::size_t n = 40000;
  const auto shots = run_shots(c, psi0, n, 2024, z_basis(3));
  std::vector<double> counts(8, 0.0);
  std::size_t accepted = 0;
  for (const auto& s : shots) {
    if (!s.accepted) continue;
    ++accepted;
    counts[s.sample] += 1;
  }
  const double p = exact.cumulative_success;
  CHECK(std::abs(accepted - n * p) < 4 * std::sqrt(n * p * (1 - p)));
  for (std::uint64_t x = 0; x < 8; ++x) {
    const double q = std::norm(exact.state[x]);
    const double sigma = std::sqrt(accepted * q * (1 - q)) + 1e-9;
    INFO("x=" << x);
    CHECK(std::abs(counts[x] - accepted * q) < 5 * sigma + 1e-9);
  }
}

TEST_CASE("terminal X-basis readout") {
  Circuit c;
  c.n_visible = 3;
  ShotOptions o;
  o.basis = PauliString::from_word("XXX");
  for (const auto& s : run_shots(c, StateVector::plus(3), 200, 1, o)) {
    CHECK(s.accepted);
    CHECK(s.sample == 0);
  }
  o.basis = PauliString::from_word("XZY");
  const auto shots = run_shots(c, StateVector::plus(3), 2000, 1, o);
  for (const auto& s : shots) CHECK((s.sample & 4) == 0);
}

TEST_CASE("batches are reproducible and thread-count independent") {
  const Hamiltonian h = transverse_ising_ring(3);
  const Circuit c = build_qite_circuit(h, 0.05, 0.05, 2, Route::Rbm,
                                       AncillaPolicy::single_reused());
  const auto psi = StateVector::plus(3);
  const auto a = run_shot_batches(c, psi, 600, 6, 77, z_basis(3), 1);
  const auto b = run_shot_batches(c, psi, 600, 6, 77, z_basis(3), 4);
  REQUIRE(a.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    REQUIRE(a[k].size() == 100);
    const auto direct = run_shots(c, psi, 100, 77 ^ k, z_basis(3));
    for (std::size_t s = 0; s < 100; ++s) {
      CHECK(a[k][s].accepted == b[k][s].accepted);
      CHECK(a[k][s].sample == b[k][s].sample);
      CHECK(a[k][s].sample == direct[s].sample);
    }
  }
  CHECK_THROWS_AS(run_shot_batches(c, psi, 601, 6, 77, z_basis(3)), ConfigError);
}

TEST_CASE("vanishing branches and entangled resets are reported") {
  Circuit c;
  c.n_visible = 1;
  c.n_ancilla = 1;
  c.n_clbits = 1;
  c.gates = {gates::Hx{1}, gates::Hy{1},
             gates::Measure{1, 0}, gates::PostSelect{0, 0}, gates::Reset{1}};
  CHECK_THROWS_AS(run_exact(c, StateVector(1)), ZeroWeightError);
  const auto shots = run_shots(c, StateVector(1), 10, 3, z_basis(1));
  for (const auto& s : shots) CHECK_FALSE(s.accepted);

  Circuit ent;
  ent.n_visible = 1;
  ent.n_ancilla = 1;
  ent.gates = {gates::Hx{0}, gates::CX{0, 1}, gates::Reset{1}};
  CHECK_THROWS_AS(run_exact(ent, StateVector(1)), std::logic_error);
}

TEST_CASE("measurement groups and eigenvalues") {
  const auto groups = measurement_groups(transverse_ising_ring(3));
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].terms.size() == 3);
  CHECK(groups[0].basis.word() == "ZZZ");
  CHECK(groups[1].basis.word() == "XXX");
  CHECK(sample_eigenvalue(PauliString::from_word("ZZI"), 0b010) == -1);
  CHECK(sample_eigenvalue(PauliString::from_word("ZIZ"), 0b010) == 1);
  CHECK(sample_eigenvalue(PauliString::from_word("III"), 0b111) == 1);

  std::vector<ShotOutcome> none(5);
  CHECK_THROWS_AS(expectation_from_samples(none, groups[0]), std::runtime_error);
  std::vector<ShotOutcome> some{{true, 0b000, {}}, {true, 0b011, {}}, {false, 0b111, {}}};
  const auto est = expectation_from_samples(some, groups[0]);
  CHECK(est.accepted == 2);
  // 000: all +1 (3); 011: ZZI=-1, IZZ=+1, ZIZ=-1 (-1). Mean 1.
  CHECK(est.energy == Catch::Approx(1.0));
}

TEST_CASE("imaginary-time oracles") {
  std::mt19937_64 rng(71);
  const Hamiltonian h = transverse_ising_ring(3);
  const auto psi = oracle::random_state(3, rng);
  const StateVector s0(3, psi);
  const Eigen::VectorXcd want = oracle::expm_hermitian(oracle::hamiltonian(h), 0.7) * psi;
  CHECK(fidelity(imaginary_time_oracle(h, 0.7, s0).amplitudes(), want) > 1 - 1e-13);

  Eigen::VectorXcd v = psi;
  for (int step = 0; step < 7; ++step)
    for (const auto& t : trotter_sequence(h, 0.1, 2))
      v = oracle::expm_hermitian(oracle::pauli_word(t.string.word()), t.coefficient) * v;
  CHECK(fidelity(trotterized_oracle(h, 0.7, 0.1, 2, s0).amplitudes(), v) > 1 - 1e-13);

  const auto sp = exact_spectrum(h);
  CHECK(sp.ground_energy == Catch::Approx(-2 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK(sp.gap == Catch::Approx(2 * std::sqrt(3.0) - 2.0).epsilon(1e-10));
  CHECK(expectation(sp.ground_state, h) == Catch::Approx(sp.ground_energy).epsilon(1e-12));
  CHECK(expectation(StateVector::plus(3), h) == Catch::Approx(-3.0));
}
