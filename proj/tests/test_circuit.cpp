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
#include <random>

#include "oracles.hpp"
#include "qite/circuit.hpp"
#include "qite/errors.hpp"
#include "qite/simulator.hpp"

using namespace qite;

namespace {

// Checks direction (fidelity) and magnitude (success * e^{2 log_norm}) of the
// post-selected action against the exact product of factors.
void check_action(const Circuit& c, const Eigen::VectorXcd& psi,
                  const Eigen::VectorXcd& want, double fid_tol = 1e-12) {
  const auto r = run_exact(c, StateVector(c.n_visible, psi));
  CHECK(fidelity(r.state.amplitudes(), want) >= 1 - fid_tol);
  const double norm2 = want.squaredNorm();
  CHECK(r.log_success + 2 * c.log_norm == Catch::Approx(std::log(norm2)).margin(1e-10));
}

Eigen::VectorXcd product_action(const std::vector<HamiltonianTerm>& seq,
                                Eigen::VectorXcd v) {
  for (const auto& t : seq)
    v = oracle::expm_hermitian(oracle::pauli_word(t.string.word()), t.coefficient) * v;
  return v;
}

}  // namespace

TEST_CASE("single-term encodings realise exp(-K P) on both routes") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> kd(-1.5, 1.5);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::string w = oracle::random_word(n, rng);
    const double K = kd(rng);
    const auto psi = oracle::random_state(n, rng);
    const Eigen::VectorXcd want = oracle::expm_hermitian(oracle::pauli_word(w), K) * psi;
    INFO(w << " K=" << K);
    const HamiltonianTerm term{K, PauliString::from_word(w)};
    const Circuit rbm = encode_term_rbm(term, 1.0, n);
    CHECK_NOTHROW(validate(rbm));
    check_action(rbm, psi, want);
    const Circuit cx = encode_term_cx(term, 1.0, n);
    CHECK_NOTHROW(validate(cx));
    check_action(cx, psi, want);
  }
}

TEST_CASE("RBM route uses no basis-rotation gates, CX route uses ladders") {
  const HamiltonianTerm term{0.3, PauliString::from_word("XYZ")};
  const auto s_rbm = summarize(encode_term_rbm(term, 1.0, 3));
  CHECK(s_rbm.hx + s_rbm.hy + s_rbm.hy_dag + s_rbm.cx == 0);
  const auto s_cx = summarize(encode_term_cx(term, 1.0, 3));
  CHECK(s_cx.cx == 4);
  CHECK(s_cx.hx == 2);
  CHECK(s_cx.hy + s_cx.hy_dag == 2);
  CHECK(s_cx.measure == 1);
  CHECK(s_cx.post_select == 1);
  CHECK(s_cx.reset == 1);
}

TEST_CASE("second-order Trotter sequence for the Ising ring") {
  const Hamiltonian h = transverse_ising_ring(3);
  const auto seq = trotter_sequence(h, 0.01, 2);
  REQUIRE(seq.size() == 9);
  for (int k : {0, 1, 2, 6, 7, 8}) {
    CHECK(seq[k].string.weight() == 1);
    CHECK(seq[k].coefficient == Catch::Approx(-0.005));
  }
  for (int k : {3, 4, 5}) CHECK(seq[k].coefficient == Catch::Approx(0.01));
  CHECK(trotter_sequence(h, 0.01, 1).size() == 6);
  CHECK_THROWS_AS(trotter_sequence(h, 0.01, 3), ConfigError);

  const Circuit step = trotter_step(h, 0.01, 2, Route::Rbm, AncillaPolicy::single_reused());
  CHECK(step.n_encodings() == 9);
  CHECK(step.n_ancilla == 1);
  const auto s = summarize(step);
  CHECK(s.measure == 9);
  CHECK(s.post_select == 9);
  CHECK(s.reset == 9);
}

TEST_CASE("Trotter step count must be integral") {
  CHECK(trotter_step_count(1.0, 0.01) == 100);
  CHECK(trotter_step_count(0.0, 0.01) == 0);
  CHECK(trotter_step_count(0.25, 0.01) == 25);
  CHECK_THROWS_AS(trotter_step_count(0.015, 0.01), ConfigError);
  CHECK_THROWS_AS(trotter_step_count(-1.0, 0.01), ConfigError);
}

TEST_CASE("full circuits equal the product of Trotter factors") {
  std::mt19937_64 rng(67);
  const Hamiltonian ising = transverse_ising_ring(3);
  Hamiltonian mixed(3);
  mixed.add(0.7, "XYZ");
  mixed.add(-0.4, "ZZI");
  mixed.add(0.5, "IYI");
  mixed.add(0.3, "ZZZ");
  mixed.add(0.2, "III");
  for (const Hamiltonian* h : {&ising, static_cast<const Hamiltonian*>(&mixed)}) {
    for (int order : {1, 2}) {
      for (Route route : {Route::Rbm, Route::Cx}) {
        for (AncillaPolicy pol : {AncillaPolicy::single_reused(), AncillaPolicy::pooled(3)}) {
          const double dtau = 0.05;
          const Circuit c = build_qite_circuit(*h, 0.2, dtau, order, route, pol);
          CHECK_NOTHROW(validate(c));
          auto seq = trotter_sequence(*h, dtau, order);
          std::vector<HamiltonianTerm> all;
          for (int k = 0; k < 4; ++k) all.insert(all.end(), seq.begin(), seq.end());
          const auto psi = oracle::random_state(3, rng);
          check_action(c, psi, product_action(all, psi));
        }
      }
    }
  }
}

TEST_CASE("pooled ancillas shorten the circuit") {
  const Hamiltonian h = transverse_ising_ring(3);
  const Circuit single = trotter_step(h, 0.01, 2, Route::Rbm, AncillaPolicy::single_reused());
  const Circuit pooled = trotter_step(h, 0.01, 2, Route::Rbm, AncillaPolicy::pooled(3));
  CHECK(pooled.n_ancilla == 3);
  const auto a = summarize(single), b = summarize(pooled);
  CHECK(b.depth < a.depth);
  CHECK(b.measure_waves < a.measure_waves);
  CHECK(a.measure_waves == 9);
  CHECK_THROWS(AncillaPolicy::pooled(0));
}

TEST_CASE("circuit append renumbers classical bits") {
  const HamiltonianTerm term{0.2, PauliString::from_word("ZZ")};
  Circuit c = encode_term_rbm(term, 1.0, 2);
  const Circuit d = c;
  c.append(d);
  CHECK(c.n_clbits == 2 * d.n_clbits);
  CHECK(c.log_norm == Catch::Approx(2 * d.log_norm));
  CHECK(c.n_encodings() == 2 * d.n_encodings());
  CHECK_NOTHROW(validate(c));
  Circuit bad = c;
  bad.gates.push_back(gates::PostSelect{99, 0});
  CHECK_THROWS_AS(validate(bad), std::logic_error);
}

TEST_CASE("qubit-wise compatibility") {
  const auto p = [](const char* w) { return PauliString::from_word(w); };
  CHECK(qubitwise_compatible(p("ZZI"), p("IZZ")));
  CHECK(qubitwise_compatible(p("XII"), p("IXI")));
  CHECK_FALSE(qubitwise_compatible(p("XZI"), p("ZZI")));
  CHECK(gate_name(gates::CX{0, 1}) == "cx");
}
