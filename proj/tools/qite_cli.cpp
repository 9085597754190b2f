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


// qite: command-line front end (decompose | evolve | ising-demo | ldbm).

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "qite/app.hpp"
#include "qite/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open output file " + path);
    stream = file.get();
  }
  std::ostream& operator*() { return *stream; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qite::ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qite;
  using namespace qite::app;

  CLI::App cli{"Imaginary-time evolution circuits from hidden-unit identities"};
  cli.require_subcommand(1);

  // decompose
  std::string word;
  double K = 0.0;
  bool verify = false;
  auto* dec = cli.add_subcommand("decompose", "decompose exp(-K P) for one Pauli word");
  dec->add_option("word", word, "Pauli word, e.g. ZZ or XIY")->required();
  dec->add_option("K", K, "coupling")->required()->allow_extra_args(false);
  dec->add_flag("--verify", verify, "check against the dense matrix exponential");

  // evolve
  RunConfig cfg;
  std::string tau_list = "1.0", route = "rbm", ancilla = "single", mode = "exact";
  auto* evo = cli.add_subcommand("evolve", "post-selected imaginary-time evolution");
  evo->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian file")->required();
  evo->add_option("--tau", tau_list, "comma-separated checkpoints")->capture_default_str();
  evo->add_option("--dtau", cfg.dtau, "Trotter step")->capture_default_str();
  evo->add_option("--order", cfg.order, "Trotter order")->check(CLI::IsMember({1, 2}))->capture_default_str();
  evo->add_option("--route", route, "rbm | cx")->capture_default_str();
  evo->add_option("--ancilla", ancilla, "single | pooled:N")->capture_default_str();
  evo->add_option("--shots", cfg.shots, "total shots per checkpoint")->capture_default_str();
  evo->add_option("--batches", cfg.batches, "jackknife batches")->capture_default_str();
  evo->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  evo->add_option("--init", cfg.init, "plus | zero | basis:BITS | json:PATH")->capture_default_str();
  evo->add_option("--mode", mode, "exact | shots")->capture_default_str();
  evo->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  evo->add_option("--out", cfg.out, "CSV output path (default stdout)");

  // ising-demo
  bool paper_scale = false;
  std::string demo_taus, demo_out, demo_summary;
  std::size_t demo_shots = 0, demo_batches = 0;
  std::uint64_t demo_seed = DemoOptions{}.seed;
  unsigned demo_threads = 0;
  auto* demo = cli.add_subcommand("ising-demo", "three-site critical transverse Ising ring");
  demo->add_flag("--paper-scale", paper_scale, "10^6 shots per checkpoint");
  demo->add_option("--tau", demo_taus, "comma-separated checkpoints (default 0,0.1,...,1)");
  demo->add_option("--shots", demo_shots, "override the shot count");
  demo->add_option("--batches", demo_batches, "override the batch count");
  demo->add_option("--seed", demo_seed, "master seed")->capture_default_str();
  demo->add_option("--threads", demo_threads, "worker threads (0: all cores)");
  demo->add_option("--out", demo_out, "CSV output path (default stdout)");
  demo->add_option("--summary", demo_summary,
                   "summary JSON path (default: next to --out, else stderr)");

  // ldbm
  std::string script_path, ldbm_init = "zero", ldbm_ham, ldbm_out;
  std::size_t ldbm_n = 1;
  auto* ldbm = cli.add_subcommand("ldbm", "run a gate script on an L-DBM network");
  ldbm->add_option("script", script_path, "op script file")->required();
  ldbm->add_option("-n,--qubits", ldbm_n, "visible units")->capture_default_str();
  ldbm->add_option("--init", ldbm_init, "plus | zero | basis:BITS")->capture_default_str();
  ldbm->add_option("--hamiltonian", ldbm_ham, "report <H> of the final state");
  ldbm->add_option("--out", ldbm_out, "JSON output path (default stdout)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*dec) {
      std::cout << cmd_decompose(word, K, verify).dump(2) << '\n';
    } else if (*evo) {
      cfg.taus = parse_tau_list(tau_list);
      cfg.route = parse_route(route);
      cfg.ancilla = parse_ancilla(ancilla);
      cfg.mode = parse_mode(mode);
      cfg.validate();
      const Hamiltonian h = load_hamiltonian(cfg.hamiltonian_path);
      Output out(cfg.out);
      cmd_evolve(cfg, h, *out, std::cerr);
    } else if (*demo) {
      DemoOptions opts = ising_demo_defaults(paper_scale);
      if (!demo_taus.empty()) opts.taus = parse_tau_list(demo_taus);
      if (demo_shots) opts.shots = demo_shots;
      if (demo_batches) opts.batches = demo_batches;
      opts.seed = demo_seed;
      opts.threads = demo_threads;
      if (demo_summary.empty() && !demo_out.empty() && demo_out != "-")
        demo_summary =
            std::filesystem::path(demo_out).replace_extension(".json").string();
      Output out(demo_out);
      const json summary = cmd_ising_demo(opts, *out, std::cerr);
      if (demo_summary.empty()) {
        std::cerr << summary.dump(2) << '\n';
      } else {
        Output s(demo_summary);
        *s << summary.dump(2) << '\n';
      }
    } else if (*ldbm) {
      const std::string script = read_file(script_path);
      std::unique_ptr<Hamiltonian> h;
      if (!ldbm_ham.empty()) {
        h = std::make_unique<Hamiltonian>(load_hamiltonian(ldbm_ham));
        if (!ldbm->count("--qubits")) ldbm_n = h->n_qubits();
      }
      LdbmRun run = run_ldbm_script(script, initial_network(ldbm_init, ldbm_n));
      json report = ldbm_report(run.net, h.get());
      report["events"] = std::move(run.events);
      Output out(ldbm_out);
      *out << report.dump(2) << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
