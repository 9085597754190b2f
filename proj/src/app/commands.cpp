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


#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "qite/app.hpp"
#include "qite/errors.hpp"
#include "qite/rbm_decomp.hpp"
#include "qite/rng.hpp"
#include "qite/simulator.hpp"
#include "qite/stats.hpp"

namespace qite::app {

namespace {

constexpr unsigned kStateLimit = 20;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class TermKind { Identity, ZType, XType, Other };

TermKind classify(const PauliString& p) {
  if (p.is_identity()) return TermKind::Identity;
  if (p.is_diagonal()) return TermKind::ZType;
  for (PauliOp op : p.ops())
    if (op != PauliOp::I && op != PauliOp::X) return TermKind::Other;
  return TermKind::XType;
}

double log_model_acceptance(const Circuit& c) {
  double s = 0.0;
  for (double p : c.encoding_success) s += std::log(p);
  return s;
}

struct GroupTally {
  std::vector<double> sums;
  std::vector<std::size_t> counts;
};

GroupTally tally(const std::vector<std::vector<ShotOutcome>>& batches,
                 const std::vector<HamiltonianTerm>& terms) {
  GroupTally t;
  for (const auto& batch : batches) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& shot : batch) {
      if (!shot.accepted) continue;
      ++count;
      for (const auto& term : terms)
        sum += term.coefficient * sample_eigenvalue(term.string, shot.sample);
    }
    t.sums.push_back(sum);
    t.counts.push_back(count);
  }
  return t;
}

void append_warnings(EvolveRow& row, const std::vector<std::string>& w,
                     const char* what) {
  for (const auto& s : w) row.warnings.push_back(fmt::format("{}: {}", what, s));
}

EvolveRow exact_checkpoint(const RunConfig& cfg, const Hamiltonian& h,
                           const StateVector& psi0, double tau) {
  const Circuit c =
      build_qite_circuit(h, tau, cfg.dtau, cfg.order, cfg.route, cfg.ancilla);
  const ExactRunResult r = run_exact(c, psi0, kStateLimit);
  const EnergyParts parts = energy_parts(r.state, h);
  EvolveRow row;
  row.tau = tau;
  row.E_mean = parts.total;
  row.ZZ_mean = parts.z_part;
  row.X_mean = parts.x_part;
  row.acceptance = r.cumulative_success;
  row.acceptance_model = std::exp(log_model_acceptance(c));
  row.effective_samples = 0;
  row.E_oracle = expectation(imaginary_time_oracle(h, tau, psi0), h);
  row.E_trotter =
      expectation(trotterized_oracle(h, tau, cfg.dtau, cfg.order, psi0), h);
  return row;
}

EvolveRow shots_checkpoint(const RunConfig& cfg, const Hamiltonian& h,
                           const StateVector& psi0, double tau,
                           std::size_t index) {
  std::vector<HamiltonianTerm> z_terms, x_terms;
  double constant = 0.0;
  for (const auto& t : h.terms()) {
    switch (classify(t.string)) {
      case TermKind::Identity:
        constant += t.coefficient;
        break;
      case TermKind::ZType:
        z_terms.push_back(t);
        break;
      case TermKind::XType:
        x_terms.push_back(t);
        break;
      case TermKind::Other:
        throw ConfigError(fmt::format(
            "shots mode measures Z-type and X-type terms only; got {}",
            t.string.word()));
    }
  }
  const std::size_t n_groups = !z_terms.empty() + !x_terms.empty();
  if (n_groups == 0) throw ConfigError("Hamiltonian has no measurable terms");
  const std::size_t per_group = cfg.shots / n_groups;
  if (cfg.shots % n_groups || per_group % cfg.batches)
    throw ConfigError(fmt::format(
        "{} shots do not split into {} group(s) of {} batches", cfg.shots,
        n_groups, cfg.batches));

  const Circuit c =
      build_qite_circuit(h, tau, cfg.dtau, cfg.order, cfg.route, cfg.ancilla);
  EvolveRow row;
  row.tau = tau;
  row.acceptance_model = std::exp(log_model_acceptance(c));

  std::vector<GroupTally> tallies;
  std::size_t accepted_total = 0;
  std::uint64_t group_id = 0;
  for (const auto* terms : {&z_terms, &x_terms}) {
    ++group_id;
    if (terms->empty()) {
      tallies.push_back({});
      continue;
    }
    ShotOptions opts;
    opts.basis = PauliString(h.n_qubits());
    for (std::size_t q = 0; q < h.n_qubits(); ++q)
      opts.basis[q] = terms == &z_terms ? PauliOp::Z : PauliOp::X;
    const std::uint64_t seed =
        mix_seed(cfg.seed ^ mix_seed((std::uint64_t(index) << 8) | group_id));
    const auto batches = run_shot_batches(c, psi0, per_group, cfg.batches,
                                          seed, opts, cfg.threads, kStateLimit);
    tallies.push_back(tally(batches, *terms));
    for (std::size_t n : tallies.back().counts) accepted_total += n;
  }
  row.effective_samples = accepted_total;
  row.acceptance = double(accepted_total) / double(per_group * n_groups);

  const auto group_estimate = [&](const GroupTally& t, double& mean,
                                  double& err, const char* name) {
    if (t.sums.empty()) return;
    try {
      const RatioResult rr = ratio_estimator(t.sums, t.counts, cfg.batches);
      append_warnings(row, rr.warnings, name);
      if (rr.series.estimates.size() >= 2) {
        const Estimate e = jackknife(rr.series);
        mean = e.mean;
        err = e.std_error;
      } else {
        mean = rr.series.estimates.front();
        err = kNaN;
        row.warnings.push_back(fmt::format("{}: one usable batch", name));
      }
    } catch (const std::runtime_error& e) {
      mean = err = kNaN;
      row.warnings.push_back(fmt::format("{}: {}", name, e.what()));
    }
  };
  group_estimate(tallies[0], row.ZZ_mean, row.ZZ_err, "ZZ");
  group_estimate(tallies[1], row.X_mean, row.X_err, "X");

  // Energy per batch: group means of the same batch index plus constants.
  BatchSeries energy;
  std::size_t dropped = 0;
  for (std::size_t b = 0; b < cfg.batches; ++b) {
    double e = constant;
    bool ok = true;
    for (const auto& t : tallies) {
      if (t.sums.empty()) continue;
      if (t.counts[b] == 0) {
        ok = false;
        break;
      }
      e += t.sums[b] / double(t.counts[b]);
    }
    if (ok)
      energy.estimates.push_back(e);
    else
      ++dropped;
  }
  if (dropped)
    row.warnings.push_back(fmt::format(
        "E: {} of {} batches without accepted shots dropped", dropped,
        cfg.batches));
  if (energy.estimates.size() >= 2) {
    const Estimate e = jackknife(energy);
    row.E_mean = e.mean;
    row.E_err = e.std_error;
  } else {
    row.E_mean = energy.estimates.empty() ? kNaN : energy.estimates.front();
    row.E_err = kNaN;
    row.warnings.push_back("E: fewer than two usable batches");
  }
  return row;
}

}  // namespace

EnergyParts energy_parts(const StateVector& psi, const Hamiltonian& h) {
  EnergyParts p;
  const double nrm = psi.amplitudes().squaredNorm();
  for (const auto& t : h.terms()) {
    const double v = t.coefficient * psi.expectation(t.string).real() / nrm;
    p.total += v;
    const TermKind k = classify(t.string);
    if (k == TermKind::ZType) p.z_part += v;
    if (k == TermKind::XType) p.x_part += v;
  }
  return p;
}

EvolveRow evolve_checkpoint(const RunConfig& cfg, const Hamiltonian& h,
                            const StateVector& psi0, double tau,
                            std::size_t checkpoint_index) {
  return cfg.mode == Mode::Exact
             ? exact_checkpoint(cfg, h, psi0, tau)
             : shots_checkpoint(cfg, h, psi0, tau, checkpoint_index);
}

std::vector<EvolveRow> cmd_evolve(const RunConfig& cfg, const Hamiltonian& h,
                                  std::ostream& csv, std::ostream& log) {
  cfg.validate();
  const StateVector psi0 = parse_initial_state(cfg.init, h.n_qubits());
  std::vector<EvolveRow> rows;
  csv << csv_header(cfg.mode) << '\n' << std::flush;
  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    rows.push_back(evolve_checkpoint(cfg, h, psi0, cfg.taus[i], i));
    csv << csv_row(rows.back(), cfg.mode) << '\n' << std::flush;
    for (const auto& w : rows.back().warnings)
      log << fmt::format("warning: tau={}: {}\n", cfg.taus[i], w);
  }
  return rows;
}

DemoOptions ising_demo_defaults(bool paper_scale) {
  DemoOptions o;
  for (int k = 0; k <= 10; ++k) o.taus.push_back(k / 10.0);
  o.shots = paper_scale ? 1000000 : 100000;
  o.batches = 100;
  return o;
}

json cmd_ising_demo(const DemoOptions& opts, std::ostream& csv,
                    std::ostream& log) {
  const Hamiltonian h = transverse_ising_ring(3);
  RunConfig cfg;
  cfg.taus = opts.taus;
  cfg.dtau = 0.01;
  cfg.order = 2;
  cfg.route = Route::Rbm;
  cfg.ancilla = AncillaPolicy::single_reused();
  cfg.shots = opts.shots;
  cfg.batches = opts.batches;
  cfg.seed = opts.seed;
  cfg.mode = Mode::Shots;
  cfg.threads = opts.threads;
  cfg.validate();
  const StateVector psi0 = StateVector::plus(3);
  const Spectrum sp = exact_spectrum(h);

  // First factor of the first step: exp(+dtau/2 X_0) on |+++>.
  const auto seq = trotter_sequence(h, cfg.dtau, cfg.order);
  const Circuit first = encode_term_rbm(seq.front(), 1.0, 3);
  const double first_success = run_exact(first, psi0).cumulative_success;

  json rows = json::array();
  csv << csv_header(Mode::Shots) << '\n' << std::flush;
  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    const double tau = cfg.taus[i];
    const EvolveRow row = evolve_checkpoint(cfg, h, psi0, tau, i);
    csv << csv_row(row, Mode::Shots) << '\n' << std::flush;
    for (const auto& w : row.warnings)
      log << fmt::format("warning: tau={}: {}\n", tau, w);
    RunConfig exact_cfg = cfg;
    exact_cfg.mode = Mode::Exact;
    const EvolveRow ex = evolve_checkpoint(exact_cfg, h, psi0, tau, i);
    rows.push_back({{"tau", tau},
                    {"E_mean", row.E_mean},
                    {"E_err", row.E_err},
                    {"E_exact_circuit", ex.E_mean},
                    {"E_oracle", ex.E_oracle},
                    {"acceptance", row.acceptance},
                    {"acceptance_exact", ex.acceptance},
                    {"acceptance_model", row.acceptance_model},
                    {"acceptance_fit", std::pow(10.0, -std::log(10.0) * tau)},
                    {"effective_samples", row.effective_samples},
                    {"effective_samples_per_batch",
                     double(row.effective_samples) / double(cfg.batches)}});
  }
  return {{"model", "H = Z0Z1 + Z1Z2 + Z0Z2 - X0 - X1 - X2"},
          {"initial_state", "|+++>"},
          {"dtau", cfg.dtau},
          {"order", cfg.order},
          {"route", "rbm"},
          {"ancilla", "single"},
          {"shots", cfg.shots},
          {"batches", cfg.batches},
          {"seed", cfg.seed},
          {"ground_energy", sp.ground_energy},
          {"gap", sp.gap},
          {"first_encoding_success", first_success},
          {"rows", std::move(rows)}};
}

json cmd_decompose(const std::string& word, double K, bool verify) {
  PauliString p;
  try {
    p = PauliString::from_word(word);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(K)) throw ConfigError("coupling must be finite");
  if (verify && p.size() > kDefaultDenseLimit)
    throw ConfigError(fmt::format(
        "{} qubits exceeds the dense-matrix limit of {}", p.size(),
        kDefaultDenseLimit));
  const auto support = p.support();
  const unsigned m = static_cast<unsigned>(support.size());

  Decomposition d;
  if (K != 0.0) try {
    if (m == 0) {
      d.log_norm = -K;
    } else {
      Decomposition local;
      switch (m) {
        case 1: local = decompose_one_body(K); break;
        case 2: local = decompose_two_body(K); break;
        case 3: local = decompose_three_body(K); break;
        case 4: local = decompose_four_body(K); break;
        default: local = decompose_general(m, K);
      }
      d = embed(local, support, p);
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  json out = {{"word", word}, {"K", K}, {"decomposition", to_json(d)}};
  if (!d.hidden_units.empty()) {
    json success = {{"average", average_success_probability(d.hidden_units[0])}};
    if (m <= 2)
      success["model"] = average_success_probability(
          SuccessModel{SuccessKind::TwoBody, std::abs(K), K < 0 ? -1 : 1});
    if (m == 3)
      success["model"] = average_success_probability(
          SuccessModel{SuccessKind::ThreeBody, std::abs(K), K < 0 ? -1 : 1});
    out["success_probability"] = std::move(success);
  }
  if (verify) {
    const Eigen::MatrixXcd P = dense_matrix(p);
    const auto dim = P.rows();
    const Eigen::MatrixXcd target =
        std::cosh(K) * Eigen::MatrixXcd::Identity(dim, dim) - std::sinh(K) * P;
    const Eigen::MatrixXcd got =
        d.hidden_units.empty() && d.log_norm == 0.0
            ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(dim, dim))
            : reconstruct_dense(d, p);
    out["verify_max_error"] = (got - target).cwiseAbs().maxCoeff();
  }
  return out;
}

// ---------------------------------------------------------------------------
// L-DBM scripts

namespace {

struct Instr {
  std::size_t line = 0;
  std::vector<std::string> tok;
  std::vector<Instr> body;  // repeat blocks
};

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::vector<Instr> parse_block(const std::vector<std::string>& lines,
                               std::size_t& i, bool nested) {
  std::vector<Instr> out;
  while (i < lines.size()) {
    std::string text = lines[i];
    const std::size_t line = ++i;
    if (const auto hash = text.find('#'); hash != std::string::npos)
      text.resize(hash);
    auto tok = split(text);
    if (tok.empty()) continue;
    if (tok[0] == "end") {
      if (!nested) throw ParseError(line, "'end' without 'repeat'");
      return out;
    }
    Instr ins{line, std::move(tok), {}};
    if (ins.tok[0] == "repeat") {
      ins.body = parse_block(lines, i, true);
    }
    out.push_back(std::move(ins));
  }
  if (nested) throw ParseError(lines.size(), "'repeat' without 'end'");
  return out;
}

std::size_t index_arg(const Instr& ins, std::size_t k, std::size_t n) {
  const std::string& s = ins.tok.at(k);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(ins.line, fmt::format("malformed qubit index '{}'", s));
  if (v >= n)
    throw ParseError(ins.line,
                     fmt::format("qubit index {} out of range (N = {})", v, n));
  return v;
}

double real_arg(const Instr& ins, std::size_t k) {
  const std::string& s = ins.tok.at(k);
  double v = 0.0;
  const char* first = s.data() + (s.size() && s[0] == '+');
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(ins.line, fmt::format("malformed number '{}'", s));
  return v;
}

void expect_args(const Instr& ins, std::size_t n) {
  if (ins.tok.size() != n + 1)
    throw ParseError(ins.line, fmt::format("'{}' takes {} argument(s)",
                                           ins.tok[0], n));
}

void execute(const std::vector<Instr>& prog, LdbmRun& run) {
  for (const Instr& ins : prog) {
    const std::string& op = ins.tok[0];
    LdbmNetwork& net = run.net;
    const std::size_t n = net.n_visible();
    if (op == "hx" || op == "hy" || op == "hydag") {
      expect_args(ins, 1);
      const std::size_t l = index_arg(ins, 1, n);
      net = op == "hx"   ? apply_hx(net, l)
            : op == "hy" ? apply_hy(net, l)
                         : apply_hy_dag(net, l);
    } else if (op == "rz") {
      expect_args(ins, 2);
      net = apply_rz(net, index_arg(ins, 1, n), real_arg(ins, 2));
    } else if (op == "rzz") {
      expect_args(ins, 3);
      const std::size_t l1 = index_arg(ins, 1, n), l2 = index_arg(ins, 2, n);
      if (l1 == l2) throw ParseError(ins.line, "rzz needs distinct qubits");
      net = apply_rzz(net, l1, l2, real_arg(ins, 3));
    } else if (op == "imag") {
      expect_args(ins, 2);
      PauliString p;
      try {
        p = PauliString::from_word(ins.tok[1]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(ins.line, e.what());
      }
      if (p.size() != n)
        throw ParseError(ins.line, fmt::format("word '{}' is not {} qubits wide",
                                               ins.tok[1], n));
      net = apply_term_imaginary(net, {1.0, p}, real_arg(ins, 2));
    } else if (op == "to-dbm") {
      expect_args(ins, 0);
      const DbmNetwork d = ldbm_to_dbm(net);
      json ev = {{"op", "to-dbm"},
                 {"line", ins.line},
                 {"hidden", d.n_hidden()},
                 {"deep", d.n_deep()}};
      if (d.n_deep() <= kDefaultMarginalLimit &&
          net.n_hidden() <= kDefaultMarginalLimit)
        ev["fidelity"] = fidelity(raw_amplitudes(d), raw_amplitudes(net));
      ev["dbm"] = to_json(d);
      run.events.push_back(std::move(ev));
    } else if (op == "dump") {
      expect_args(ins, 0);
      run.events.push_back(
          {{"op", "dump"}, {"line", ins.line}, {"network", to_json(net)}});
    } else if (op == "repeat") {
      expect_args(ins, 1);
      const double times = real_arg(ins, 1);
      if (times < 0 || times != std::floor(times))
        throw ParseError(ins.line, "repeat count must be a non-negative integer");
      for (long k = 0; k < static_cast<long>(times); ++k) execute(ins.body, run);
    } else {
      throw ParseError(ins.line, fmt::format("unknown op '{}'", op));
    }
  }
}

}  // namespace

LdbmRun run_ldbm_script(const std::string& script, LdbmNetwork net) {
  std::vector<std::string> lines;
  std::istringstream in(script);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  std::size_t i = 0;
  const auto prog = parse_block(lines, i, false);
  LdbmRun run{std::move(net), {}};
  execute(prog, run);
  return run;
}

json ldbm_report(const LdbmNetwork& net, const Hamiltonian* h) {
  double discarded = 0.0;
  const StateVector s = statevector(net, &discarded);
  json out = {{"N", net.n_visible()},
              {"M", net.n_hidden()},
              {"laterals", net.lateral_count()},
              {"real_parameters", net.is_real(1e-15)},
              {"discarded_log_norm", discarded},
              {"statevector", to_json(s)}};
  if (h) {
    if (h->n_qubits() != net.n_visible())
      throw ConfigError("Hamiltonian width differs from the network");
    out["energy"] = expectation(s, *h);
  }
  return out;
}

}  // namespace qite::app
