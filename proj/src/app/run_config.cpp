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

#include "qite/app.hpp"
#include "qite/errors.hpp"
#include "qite/ldbm.hpp"

namespace qite::app {

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = first + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw ConfigError(fmt::format("malformed {} '{}'", what, s));
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (!(dtau > 0.0) || !std::isfinite(dtau))
    throw ConfigError("--dtau must be positive");
  if (order != 1 && order != 2) throw ConfigError("--order must be 1 or 2");
  if (taus.empty()) throw ConfigError("no --tau checkpoints given");
  for (double t : taus) trotter_step_count(t, dtau);
  if (mode == Mode::Shots) {
    if (shots == 0) throw ConfigError("--shots must be positive");
    if (batches < 2) throw ConfigError("--batches must be at least 2");
    if (shots % batches != 0)
      throw ConfigError(fmt::format(
          "--shots {} is not divisible by --batches {}", shots, batches));
  }
}

Route parse_route(const std::string& s) {
  if (s == "rbm") return Route::Rbm;
  if (s == "cx") return Route::Cx;
  throw ConfigError(fmt::format("unknown route '{}' (rbm or cx)", s));
}

AncillaPolicy parse_ancilla(const std::string& s) {
  if (s == "single") return AncillaPolicy::single_reused();
  if (s.rfind("pooled:", 0) == 0) {
    const std::string_view num = std::string_view(s).substr(7);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc{} || ptr != num.data() + num.size() || n == 0)
      throw ConfigError(fmt::format("malformed ancilla pool '{}'", s));
    return AncillaPolicy::pooled(n);
  }
  throw ConfigError(fmt::format("unknown ancilla policy '{}' (single or pooled:N)", s));
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "shots") return Mode::Shots;
  throw ConfigError(fmt::format("unknown mode '{}' (exact or shots)", s));
}

std::vector<double> parse_tau_list(const std::string& s) {
  std::vector<double> out;
  std::string_view rest = s;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view tok = rest.substr(0, comma);
    const double v = parse_double(tok, "tau");
    if (v < 0.0) throw ConfigError("tau checkpoints must be non-negative");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

StateVector parse_initial_state(const std::string& spec, std::size_t n) {
  if (spec == "plus") return StateVector::plus(n);
  if (spec == "zero") return StateVector::zero(n);
  if (spec.rfind("basis:", 0) == 0) {
    const std::string bits = spec.substr(6);
    if (bits.size() != n)
      throw ConfigError(fmt::format("basis state '{}' needs {} bits", bits, n));
    try {
      return StateVector::basis(bits);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (spec.rfind("json:", 0) == 0) {
    StateVector s = load_state_json(spec.substr(5));
    if (s.n_qubits() != n)
      throw ConfigError(fmt::format("state file holds {} qubits, expected {}",
                                    s.n_qubits(), n));
    return s;
  }
  throw ConfigError(fmt::format(
      "unknown initial state '{}' (plus, zero, basis:BITS, json:PATH)", spec));
}

LdbmNetwork initial_network(const std::string& spec, std::size_t n) {
  if (n == 0) throw ConfigError("--qubits must be positive");
  if (spec == "plus") return LdbmNetwork(n);
  if (spec == "zero") return zero_state_network(n);
  if (spec.rfind("basis:", 0) == 0) {
    const std::string bits = spec.substr(6);
    if (bits.size() != n)
      throw ConfigError(fmt::format("basis state '{}' needs {} bits", bits, n));
    try {
      return basis_state_network(bits);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError(fmt::format(
      "unknown network initial state '{}' (plus, zero, basis:BITS)", spec));
}

std::string csv_header(Mode mode) {
  std::string h =
      "tau,E_mean,E_err,ZZ_mean,ZZ_err,X_mean,X_err,acceptance,"
      "acceptance_model,effective_samples";
  if (mode == Mode::Exact) h += ",E_oracle,E_trotter";
  return h;
}

std::string csv_row(const EvolveRow& r, Mode mode) {
  std::string s = fmt::format(
      "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},"
      "{:.12g},{}",
      r.tau, r.E_mean, r.E_err, r.ZZ_mean, r.ZZ_err, r.X_mean, r.X_err,
      r.acceptance, r.acceptance_model, r.effective_samples);
  if (mode == Mode::Exact)
    s += fmt::format(",{:.12g},{:.12g}", r.E_oracle, r.E_trotter);
  return s;
}

}  // namespace qite::app
