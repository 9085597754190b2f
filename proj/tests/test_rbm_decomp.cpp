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
#include <bit>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qite/rbm_decomp.hpp"

using namespace qite;

namespace {

Eigen::MatrixXcd target(const std::string& word, double K) {
  return oracle::expm_hermitian(oracle::pauli_word(word), K);
}

Decomposition closed_form(unsigned m, double K) {
  switch (m) {
    case 1: return decompose_one_body(K);
    case 2: return decompose_two_body(K);
    case 3: return decompose_three_body(K);
    default: return decompose_four_body(K);
  }
}

// Unit output 2cos(C + sum W z) for configuration bits (bit r <-> weight r).
double unit_field(const HiddenUnit& u, unsigned bits) {
  double t = u.bias;
  for (std::size_t r = 0; r < u.weights.size(); ++r)
    t += u.weights[r].second * ((bits >> r) & 1 ? -1.0 : 1.0);
  return t;
}

}  // namespace

TEST_CASE("one- and two-body closed forms") {
  for (double K : {0.05, 0.3, 1.0, -0.7}) {
    const double W = 0.5 * std::acos(std::exp(-2 * std::abs(K)));
    const auto one = decompose_one_body(K);
    REQUIRE(one.hidden_units.size() == 1);
    CHECK(one.hidden_units[0].weights[0].second == Catch::Approx(W).epsilon(1e-15));
    CHECK(one.hidden_units[0].bias == Catch::Approx(K > 0 ? W : -W).epsilon(1e-15));
    CHECK(one.log_norm == Catch::Approx(std::abs(K) - std::log(2.0)).epsilon(1e-15));
    CHECK(one.induced_terms.empty());

    const auto two = decompose_two_body(K);
    CHECK(two.hidden_units[0].bias == 0.0);
    CHECK(two.hidden_units[0].weights[1].second ==
          Catch::Approx(K > 0 ? W : -W).epsilon(1e-15));
    CHECK(two.induced_terms.empty());
  }
}

TEST_CASE("closed forms reconstruct exp(-K P) for every letter choice") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  for (int trial = 0; trial < 120; ++trial) {
    const unsigned m = 1 + trial % 4;
    std::string word;
    while (word.size() < m) word.push_back("XYZ"[rng() % 3]);
    const double K = coupling(rng);
    const auto d = closed_form(m, K);
    const auto got = reconstruct_dense(d, PauliString::from_word(word));
    INFO(word << " K=" << K);
    // For M >= 3 the suppressed branch scales like e^{-8|K|}, which a double
    // weight resolves only to about 1e-16 e^{8|K|} relative accuracy.
    const double tol = m < 3 ? 1e-12 : std::max(1e-12, 4e-16 * std::exp(8 * std::abs(K)));
    CHECK((got - target(word, K)).cwiseAbs().maxCoeff() < tol);
  }
}

TEST_CASE("three- and four-body identities induce the stated couplings") {
  const auto three = decompose_three_body(0.4);
  std::size_t ones = 0, twos = 0;
  for (const auto& t : three.induced_terms) {
    ones += t.string.weight() == 1;
    twos += t.string.weight() == 2;
  }
  CHECK(ones == 3);
  CHECK(twos == 3);
  CHECK(three.hidden_units[0].bias == Catch::Approx(three_body_weight(0.4)));

  const auto four = decompose_four_body(0.4);
  CHECK(four.induced_terms.size() == 6);
  for (const auto& t : four.induced_terms) CHECK(t.string.weight() == 2);
  CHECK(four.hidden_units[0].bias == 0.0);

  CHECK(decompose_three_body(0.0).empty());
  CHECK(decompose_four_body(0.0).empty());
}

TEST_CASE("induced couplings reproduce the unit output") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(-0.12, 0.12);
  for (unsigned m = 1; m <= 6; ++m) {
    HiddenUnit u{w(rng), {}};
    for (unsigned r = 0; r < m; ++r) u.weights.push_back({r, w(rng)});
    const auto K = induced_couplings(m, u);
    REQUIRE(K.size() == (std::size_t{1} << m));
    // ln[2cos(theta)] = -sum_P K_P prod z, with K_emptyset = ln A.
    for (unsigned bits = 0; bits < (1u << m); ++bits) {
      double s = 0.0;
      for (unsigned P = 0; P < (1u << m); ++P)
        s += K[P] * ((std::popcount(P & bits) & 1) ? -1.0 : 1.0);
      CHECK(-s == Catch::Approx(std::log(2 * std::cos(unit_field(u, bits)))).margin(1e-13));
    }
  }
  HiddenUnit edge{std::numbers::pi / 2, {{0, std::numbers::pi / 4}}};
  CHECK_THROWS_AS(induced_couplings(1, edge), std::domain_error);
}

TEST_CASE("general solver matches the top-order coupling") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> kd(-0.3, 0.3);
  for (unsigned m = 1; m <= 7; ++m) {
    for (int trial = 0; trial < 10; ++trial) {
      const double K = kd(rng) * (m == 7 ? 0.3 : 1.0);
      const auto d = decompose_general(m, K);
      if (K == 0.0) continue;
      REQUIRE(d.hidden_units.size() == 1);
      const auto Ks = induced_couplings(m, d.hidden_units[0]);
      // Top-order entry is K itself.
      CHECK(Ks.back() == Catch::Approx(K).margin(1e-12));
    }
  }
  CHECK_THROWS_AS(solve_general_weight(6, 50.0), std::domain_error);
  CHECK(solve_general_weight(4, 0.0).weight == 0.0);
}

TEST_CASE("closed forms agree with the general solver") {
  for (unsigned m = 1; m <= 4; ++m) {
    for (double K : {-0.25, -0.05, 0.01, 0.2, 0.3}) {
      const auto a = closed_form(m, K);
      const auto b = decompose_general(m, K);
      INFO("M=" << m << " K=" << K);
      const auto letters = PauliString::from_word(std::string(m, 'Z'));
      CHECK((reconstruct_dense(a, letters) - reconstruct_dense(b, letters))
                .cwiseAbs()
                .maxCoeff() < 1e-10);
      CHECK(a.log_norm == Catch::Approx(b.log_norm).margin(1e-10));
    }
  }
}

TEST_CASE("folded diagonal decompositions equal exp(-tau H)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 4;
    Hamiltonian h(n);
    for (int k = 0; k < 5; ++k) {
      std::string w;
      for (std::size_t q = 0; q < n; ++q) w.push_back(rng() % 2 ? 'Z' : 'I');
      h.add(cd(rng), w);
    }
    const double tau = 0.05;
    const auto ds = decompose_diagonal_hamiltonian(h, tau);
    const auto got =
        marginalized_dense(ds, PauliString::from_word(std::string(n, 'Z')));
    const auto want = oracle::expm_hermitian(oracle::hamiltonian(h), tau);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("embedding maps local indices and letters") {
  const auto d = decompose_three_body(0.3);
  const auto e = embed(d, {0, 2, 3}, PauliString::from_word("XIYZ"));
  REQUIRE(e.hidden_units[0].weights.size() == 3);
  CHECK(e.hidden_units[0].weights[1].first == 2);
  for (const auto& t : e.induced_terms) CHECK(t.string.size() == 4);
  CHECK(e.induced_terms[0].string.word() == "XIII");
  const auto rebuilt = reconstruct_dense(e, PauliString::from_word("XIYZ"));
  CHECK((rebuilt - target("XIYZ", 0.3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("success probability laws") {
  std::mt19937_64 rng(31);
  SECTION("two-body average and state-resolved forms") {
    for (double K : {0.1, 0.5, 1.0, -0.4}) {
      const SuccessModel model{SuccessKind::TwoBody, std::abs(K), K < 0 ? -1 : 1};
      const auto u = decompose_two_body(K).hidden_units[0];
      CHECK(average_success_probability(model) ==
            Catch::Approx((1 + std::exp(-4 * std::abs(K))) / 2).epsilon(1e-14));
      CHECK(average_success_probability(u) ==
            Catch::Approx(average_success_probability(model)).epsilon(1e-13));
      const auto psi = oracle::random_state(2, rng);
      double direct = 0.0, alpha = 0.0;
      for (unsigned x = 0; x < 4; ++x) {
        // State index: qubit 0 is the MSB; unit_field uses bit r <-> weight r.
        const unsigned bits = ((x >> 1) & 1) | ((x & 1) << 1);
        const double p = std::norm(psi(x));
        direct += p * std::pow(std::cos(unit_field(u, bits)), 2);
        const int zz = (std::popcount(x) % 2) ? -1 : 1;
        if (zz == (K > 0 ? 1 : -1)) alpha += p;
      }
      const double a[] = {alpha};
      CHECK(success_probability(model, a) == Catch::Approx(direct).epsilon(1e-12));
    }
  }
  SECTION("three-body") {
    const double K = 0.35;
    const auto u = decompose_three_body(K).hidden_units[0];
    const SuccessModel model{SuccessKind::ThreeBody, K, 1};
    const auto psi = oracle::random_state(3, rng);
    double direct = 0.0, a2 = 0.0, a4 = 0.0;
    for (unsigned x = 0; x < 8; ++x) {
      const double p = std::norm(psi(x));
      direct += p * std::pow(std::cos(unit_field(u, x)), 2);
      const int sum = 3 - 2 * std::popcount(x);
      if (sum == 3) a4 += p;
      if (sum == 1 || sum == -3) a2 += p;
    }
    const double a[] = {a2, a4};
    CHECK(success_probability(model, a) == Catch::Approx(direct).epsilon(1e-12));
    CHECK(average_success_probability(model) ==
          Catch::Approx(average_success_probability(u)).epsilon(1e-12));
    const SuccessModel strong{SuccessKind::ThreeBody, 5.0, 1};
    CHECK(std::abs(average_success_probability(strong) - 5.0 / 8.0) < 1e-3);
  }
  SECTION("alphas are validated") {
    const SuccessModel model{SuccessKind::TwoBody, 0.2, 1};
    const double bad[] = {1.5};
    CHECK_THROWS_AS(success_probability(model, bad), std::invalid_argument);
  }
}
