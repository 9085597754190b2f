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
#include <sstream>

#include "qite/app.hpp"
#include "qite/errors.hpp"
#include "qite/simulator.hpp"

using namespace qite;
using namespace qite::app;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<double> fields(const std::string& row) {
  std::vector<double> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(std::stod(f));
  return out;
}

}  // namespace

TEST_CASE("option parsers") {
  CHECK(parse_route("cx") == Route::Cx);
  CHECK_THROWS_AS(parse_route("ladder"), ConfigError);
  CHECK(parse_ancilla("pooled:4").capacity() == 4);
  CHECK(parse_ancilla("single").capacity() == 1);
  CHECK_THROWS_AS(parse_ancilla("pooled:x"), ConfigError);
  CHECK_THROWS_AS(parse_ancilla("pooled:0"), ConfigError);
  CHECK(parse_mode("shots") == Mode::Shots);
  CHECK(parse_tau_list("0,0.25,1") == std::vector<double>{0, 0.25, 1});
  CHECK_THROWS_AS(parse_tau_list("0,-1"), ConfigError);
  CHECK_THROWS_AS(parse_tau_list("a"), ConfigError);
  CHECK(std::norm(parse_initial_state("basis:10", 2)[2]) == Catch::Approx(1.0));
  CHECK_THROWS_AS(parse_initial_state("basis:1", 2), ConfigError);
  CHECK_THROWS_AS(parse_initial_state("ghz", 2), ConfigError);
}

TEST_CASE("run configuration invariants") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.taus = {0.015};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.taus = {1.0};
  cfg.mode = Mode::Shots;
  cfg.shots = 1001;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.shots = 1000;
  cfg.batches = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("CSV schema") {
  CHECK(csv_header(Mode::Shots) ==
        "tau,E_mean,E_err,ZZ_mean,ZZ_err,X_mean,X_err,acceptance,"
        "acceptance_model,effective_samples");
  CHECK(csv_header(Mode::Exact) == csv_header(Mode::Shots) + ",E_oracle,E_trotter");
  EvolveRow r;
  r.tau = 0.1;
  r.E_mean = -3.3418255919912345;
  CHECK(csv_row(r, Mode::Shots).rfind("0.1,-3.34182559199,", 0) == 0);
}

TEST_CASE("exact evolution of the Ising ring") {
  RunConfig cfg;
  cfg.taus = {0.0, 0.1, 0.25, 0.5, 1.0};
  std::ostringstream csv, log;
  const auto rows = cmd_evolve(cfg, transverse_ising_ring(3), csv, log);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].E_mean == Catch::Approx(-3.0));
  CHECK(rows[0].acceptance == 1.0);
  const double e0 = exact_spectrum(transverse_ising_ring(3)).ground_energy;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].E_mean < rows[k - 1].E_mean);
    CHECK(rows[k].E_mean > e0);
    CHECK(std::abs(rows[k].E_mean - rows[k].E_trotter) < 1e-10);
    CHECK(rows[k].ZZ_mean + rows[k].X_mean == Catch::Approx(rows[k].E_mean));
  }
  const auto out = lines(csv.str());
  REQUIRE(out.size() == 6);
  CHECK(fields(out[5]).size() == 12);
}

TEST_CASE("shots mode is deterministic and reports accepted samples") {
  RunConfig cfg;
  cfg.mode = Mode::Shots;
  cfg.taus = {0.0, 0.1};
  cfg.shots = 4000;
  cfg.batches = 20;
  const Hamiltonian h = transverse_ising_ring(3);
  std::ostringstream a, b, log;
  const auto rows = cmd_evolve(cfg, h, a, log);
  cfg.threads = 3;
  cmd_evolve(cfg, h, b, log);
  CHECK(a.str() == b.str());
  CHECK(rows[0].effective_samples == 4000);
  CHECK(rows[0].X_mean == -3.0);
  CHECK(std::abs(rows[0].E_mean + 3.0) < 4 * rows[0].E_err);
  CHECK(rows[1].effective_samples < 4000);
  CHECK(rows[1].acceptance == Catch::Approx(rows[1].effective_samples / 4000.0));
  CHECK(rows[1].E_err > 0.0);

  Hamiltonian y(2);
  y.add(1.0, "YY");
  std::ostringstream c;
  CHECK_THROWS_AS(cmd_evolve(cfg, y, c, log), ConfigError);
}

TEST_CASE("decompose command") {
  const json zz = cmd_decompose("ZZ", 0.5, true);
  CHECK(zz["decomposition"]["hidden_units"].size() == 1);
  CHECK(zz["verify_max_error"].get<double>() < 1e-12);

  const json zzz = cmd_decompose("ZZZ", 0.4, true);
  CHECK(zzz["decomposition"]["induced"].size() == 6);
  CHECK(zzz["verify_max_error"].get<double>() < 1e-12);

  const json zero = cmd_decompose("XY", 0.0, true);
  CHECK(zero["decomposition"]["hidden_units"].empty());
  CHECK(zero["verify_max_error"].get<double>() == 0.0);

  CHECK(cmd_decompose("ZZZZZ", 0.1, true)["verify_max_error"].get<double>() < 1e-12);
  CHECK_THROWS_AS(cmd_decompose("ZQ", 0.1, false), ConfigError);
  CHECK_THROWS_AS(cmd_decompose(std::string(13, 'Z'), 0.1, true), ConfigError);
  CHECK_THROWS_AS(cmd_decompose("ZZZZZZ", 5.0, false), ConfigError);
}

TEST_CASE("L-DBM scripts") {
  SECTION("hx on a fresh qubit") {
    const auto run = run_ldbm_script("hx 0\n", initial_network("zero", 1));
    const auto s = statevector(run.net);
    CHECK(std::abs(s[0] - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(s[1] - std::sqrt(0.5)) < 1e-12);
  }
  SECTION("GHZ") {
    const std::string script =
        "# GHZ on three qubits\n"
        "hx 0\n"
        "hx 1\nrz 0 -0.7853981633974483\nrz 1 -0.7853981633974483\n"
        "rzz 0 1 -0.7853981633974483\nhx 1\n"
        "hx 2\nrz 1 -0.7853981633974483\nrz 2 -0.7853981633974483\n"
        "rzz 1 2 -0.7853981633974483\nhx 2\n"
        "dump\nto-dbm\n";
    const auto run = run_ldbm_script(script, initial_network("zero", 3));
    const auto s = statevector(run.net);
    CHECK(std::abs(s[0] - s[7]) < 1e-10);
    CHECK(std::norm(s[0]) == Catch::Approx(0.5).epsilon(1e-10));
    REQUIRE(run.events.size() == 2);
    CHECK(run.events[1]["fidelity"].get<double>() > 1 - 1e-9);
  }
  SECTION("errors carry line numbers") {
    try {
      run_ldbm_script("hx 0\nfoo 1\n", LdbmNetwork(1));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(run_ldbm_script("hx 3\n", LdbmNetwork(2)), ParseError);
    CHECK_THROWS_AS(run_ldbm_script("rz 0\n", LdbmNetwork(2)), ParseError);
    CHECK_THROWS_AS(run_ldbm_script("repeat 2\nhx 0\n", LdbmNetwork(2)), ParseError);
    CHECK_THROWS_AS(run_ldbm_script("imag ZZZ 0.1\n", LdbmNetwork(2)), ParseError);
  }
}

TEST_CASE("imaginary-time script matches exact-mode evolution") {
  const Hamiltonian h = transverse_ising_ring(3);
  const std::string script =
      "repeat 100\n"
      "imag XII -0.005\nimag IXI -0.005\nimag IIX -0.005\n"
      "imag ZZI 0.01\nimag IZZ 0.01\nimag ZIZ 0.01\n"
      "imag XII -0.005\nimag IXI -0.005\nimag IIX -0.005\n"
      "end\n";
  const auto run = run_ldbm_script(script, LdbmNetwork(3));
  const json report = ldbm_report(run.net, &h);
  RunConfig cfg;
  cfg.taus = {1.0};
  std::ostringstream csv, log;
  const auto rows = cmd_evolve(cfg, h, csv, log);
  CHECK(std::abs(report["energy"].get<double>() - rows[0].E_mean) < 1e-8);
  CHECK(report["M"].get<std::size_t>() == 2100);
}

TEST_CASE("Ising demo summary") {
  DemoOptions opts = ising_demo_defaults(false);
  CHECK(opts.taus.size() == 11);
  CHECK(opts.shots == 100000);
  CHECK(ising_demo_defaults(true).shots == 1000000);
  opts.taus = {0.0, 0.1};
  opts.shots = 2000;
  opts.batches = 10;
  std::ostringstream csv, log;
  const json s = cmd_ising_demo(opts, csv, log);
  CHECK(s["first_encoding_success"].get<double>() == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(s["ground_energy"].get<double>() == Catch::Approx(-2 * std::sqrt(3.0)));
  const auto& row = s["rows"][1];
  CHECK(row["acceptance_model"].get<double>() <= row["acceptance_exact"].get<double>());
  CHECK(lines(csv.str()).size() == 3);
}
