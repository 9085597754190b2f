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


#include "qite/circuit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qite/errors.hpp"

namespace qite {

std::string gate_name(const Gate& g) {
  static const char* kNames[] = {"hx",      "hy",         "hydag", "cx",
                                 "pauli_rotation", "measure", "postselect",
                                 "reset"};
  return kNames[g.index()];
}

AncillaPolicy AncillaPolicy::pooled(std::size_t n) {
  if (n == 0) throw ConfigError("ancilla pool must hold at least one qubit");
  return {Mode::Pooled, n};
}

void Circuit::append(const Circuit& other) {
  if (gates.empty() && n_visible == other.n_visible &&
      n_ancilla <= other.n_ancilla)
    n_ancilla = other.n_ancilla;
  if (other.n_visible != n_visible ||
      (!other.gates.empty() && other.n_ancilla != n_ancilla))
    throw std::invalid_argument("appending a circuit of a different width");
  const std::size_t offset = n_clbits;
  gates.reserve(gates.size() + other.gates.size());
  for (Gate g : other.gates) {
    if (auto* m = std::get_if<gates::Measure>(&g)) m->clbit += offset;
    if (auto* p = std::get_if<gates::PostSelect>(&g)) p->clbit += offset;
    gates.push_back(std::move(g));
  }
  n_clbits += other.n_clbits;
  log_norm += other.log_norm;
  encoding_success.insert(encoding_success.end(),
                          other.encoding_success.begin(),
                          other.encoding_success.end());
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::size_t> gate_qubits(const Gate& g) {
  return std::visit(
      overloaded{
          [](const gates::Hx& x) -> std::vector<std::size_t> { return {x.qubit}; },
          [](const gates::Hy& x) -> std::vector<std::size_t> { return {x.qubit}; },
          [](const gates::HyDag& x) -> std::vector<std::size_t> {
            return {x.qubit};
          },
          [](const gates::CX& x) -> std::vector<std::size_t> {
            return {x.control, x.target};
          },
          [](const gates::PauliRotation& x) { return x.string.support(); },
          [](const gates::Measure& x) -> std::vector<std::size_t> {
            return {x.qubit};
          },
          [](const gates::PostSelect&) -> std::vector<std::size_t> { return {}; },
          [](const gates::Reset& x) -> std::vector<std::size_t> {
            return {x.qubit};
          },
      },
      g);
}

}  // namespace

CircuitSummary summarize(const Circuit& c) {
  CircuitSummary s;
  s.qubits = c.n_qubits();
  s.ancillas = c.n_ancilla;
  std::vector<std::size_t> level(c.n_qubits(), 0);
  bool in_measure_run = false;
  for (const Gate& g : c.gates) {
    switch (g.index()) {
      case 0: ++s.hx; break;
      case 1: ++s.hy; break;
      case 2: ++s.hy_dag; break;
      case 3: ++s.cx; break;
      case 4: ++s.pauli_rotation; break;
      case 5: ++s.measure; break;
      case 6: ++s.post_select; break;
      case 7: ++s.reset; break;
    }
    const bool is_measure = std::holds_alternative<gates::Measure>(g);
    if (is_measure && !in_measure_run) ++s.measure_waves;
    if (!std::holds_alternative<gates::PostSelect>(g)) in_measure_run = is_measure;

    const auto qs = gate_qubits(g);
    if (qs.empty()) continue;
    std::size_t l = 0;
    for (std::size_t q : qs) l = std::max(l, level.at(q));
    for (std::size_t q : qs) level[q] = l + 1;
    s.depth = std::max(s.depth, l + 1);
  }
  return s;
}

void validate(const Circuit& c) {
  const std::size_t n = c.n_qubits();
  std::vector<bool> measured_bit(c.n_clbits, false);
  std::vector<bool> awaiting_reset(n, false);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const auto fail = [&](const std::string& why) {
      throw std::logic_error(
          fmt::format("gate {} ({}): {}", i, gate_name(g), why));
    };
    for (std::size_t q : gate_qubits(g))
      if (q >= n) fail(fmt::format("qubit {} outside width {}", q, n));
    if (const auto* r = std::get_if<gates::PauliRotation>(&g)) {
      if (r->string.size() != n) fail("rotation string width mismatch");
      if (!std::isfinite(r->angle)) fail("non-finite angle");
    }
    if (const auto* m = std::get_if<gates::Measure>(&g)) {
      if (m->clbit >= c.n_clbits) fail("classical bit out of range");
      if (measured_bit[m->clbit]) fail("classical bit written twice");
      measured_bit[m->clbit] = true;
      awaiting_reset[m->qubit] = true;
      continue;
    }
    if (const auto* p = std::get_if<gates::PostSelect>(&g)) {
      if (p->clbit >= c.n_clbits || !measured_bit[p->clbit])
        fail("post-selection on an unmeasured bit");
      continue;
    }
    if (const auto* r = std::get_if<gates::Reset>(&g)) {
      awaiting_reset[r->qubit] = false;
      continue;
    }
    for (std::size_t q : gate_qubits(g))
      if (awaiting_reset[q]) fail(fmt::format("qubit {} used before reset", q));
  }
}

std::vector<std::size_t> Encoding::footprint() const {
  std::set<std::size_t> qs;
  for (const auto& g : pre) qs.insert(g.qubit);
  for (const auto& g : post) qs.insert(g.qubit);
  for (const auto& [a, b] : ladder) {
    qs.insert(a);
    qs.insert(b);
  }
  for (const auto& [q, w] : unit.weights) qs.insert(q);
  return {qs.begin(), qs.end()};
}

bool qubitwise_compatible(const PauliString& a, const PauliString& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t q = 0; q < n; ++q)
    if (a[q] != PauliOp::I && b[q] != PauliOp::I && a[q] != b[q]) return false;
  return true;
}

std::vector<Encoding> rbm_block_encodings(
    const std::vector<HamiltonianTerm>& block, double& scalar_log_norm) {
  std::vector<Encoding> out;
  if (block.empty()) return out;
  const std::size_t n = block.front().string.size();
  PauliString letters(n);
  Hamiltonian diag(n);
  for (const auto& t : block) {
    if (!qubitwise_compatible(letters, t.string))
      throw std::invalid_argument("block terms are not qubit-wise compatible");
    PauliString z(n);
    for (std::size_t q = 0; q < n; ++q)
      if (t.string[q] != PauliOp::I) {
        letters[q] = t.string[q];
        z[q] = PauliOp::Z;
      }
    diag.add(t.coefficient, std::move(z));
  }
  for (auto& d : decompose_diagonal_hamiltonian(diag, 1.0)) {
    if (d.hidden_units.empty()) {
      scalar_log_norm += d.log_norm;
      continue;
    }
    for (auto& u : d.hidden_units) {
      Encoding e;
      e.average_success = average_success_probability(u);
      e.letters = PauliString(n);
      for (const auto& [q, w] : u.weights) e.letters[q] = letters[q];
      e.unit = std::move(u);
      e.log_norm = d.log_norm + std::numbers::ln2;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Encoding> cx_encodings(const HamiltonianTerm& scaled,
                                   double& scalar_log_norm) {
  const PauliString& p = scaled.string;
  const double k = scaled.coefficient;
  const auto support = p.support();
  if (support.empty()) {
    scalar_log_norm -= k;
    return {};
  }
  if (support.size() == 1) return rbm_block_encodings({scaled}, scalar_log_norm);
  if (k == 0.0) return {};

  const auto layer = basis_rotation_layer(p);
  const Decomposition d = decompose_one_body(k);
  Encoding e;
  e.pre = layer.pre_gates;
  e.post = layer.post_gates;
  for (std::size_t i = 0; i + 1 < support.size(); ++i)
    e.ladder.emplace_back(support[i], support[i + 1]);
  const std::size_t last = support.back();
  e.unit.bias = d.hidden_units.front().bias;
  e.unit.weights = {{last, d.hidden_units.front().weights.front().second}};
  e.letters = PauliString(p.size());
  e.letters[last] = PauliOp::Z;
  e.log_norm = d.log_norm + std::numbers::ln2;
  e.average_success = average_success_probability(e.unit);
  return {std::move(e)};
}

namespace {

bool fits_wave(const std::vector<const Encoding*>& wave, const Encoding& e) {
  const auto fe = e.footprint();
  for (const Encoding* w : wave) {
    if (!w->uses_ladder() && !e.uses_ladder()) {
      if (!qubitwise_compatible(w->letters, e.letters)) return false;
      continue;
    }
    const auto fw = w->footprint();
    std::vector<std::size_t> common;
    std::set_intersection(fe.begin(), fe.end(), fw.begin(), fw.end(),
                          std::back_inserter(common));
    if (!common.empty()) return false;
  }
  return true;
}

void emit_rotation(Circuit& c, const BasisRotation& r) {
  switch (r.kind) {
    case RotationKind::Hx:
      c.gates.emplace_back(gates::Hx{r.qubit});
      break;
    case RotationKind::Hy:
      c.gates.emplace_back(gates::Hy{r.qubit});
      break;
    case RotationKind::HyDag:
      c.gates.emplace_back(gates::HyDag{r.qubit});
      break;
  }
}

void emit_wave(Circuit& c, const std::vector<const Encoding*>& wave,
               std::size_t first_ancilla_qubit) {
  const std::size_t width = c.n_qubits();
  for (const Encoding* e : wave)
    for (const auto& r : e->pre) emit_rotation(c, r);
  for (const Encoding* e : wave)
    for (const auto& [a, b] : e->ladder) c.gates.emplace_back(gates::CX{a, b});
  for (std::size_t k = 0; k < wave.size(); ++k) {
    const Encoding& e = *wave[k];
    const std::size_t anc = first_ancilla_qubit + k;
    for (const auto& [q, w] : e.unit.weights) {
      PauliString s(width);
      s[q] = e.letters[q];
      s[anc] = PauliOp::X;
      c.gates.emplace_back(gates::PauliRotation{2.0 * w, std::move(s)});
    }
    if (e.unit.bias != 0.0) {
      PauliString s(width);
      s[anc] = PauliOp::X;
      c.gates.emplace_back(gates::PauliRotation{2.0 * e.unit.bias, std::move(s)});
    }
    c.log_norm += e.log_norm;
    c.encoding_success.push_back(e.average_success);
  }
  const std::size_t bit0 = c.n_clbits;
  for (std::size_t k = 0; k < wave.size(); ++k)
    c.gates.emplace_back(gates::Measure{first_ancilla_qubit + k, bit0 + k});
  for (std::size_t k = 0; k < wave.size(); ++k)
    c.gates.emplace_back(gates::PostSelect{bit0 + k, 0});
  for (std::size_t k = 0; k < wave.size(); ++k)
    c.gates.emplace_back(gates::Reset{first_ancilla_qubit + k});
  c.n_clbits += wave.size();
  for (auto it = wave.rbegin(); it != wave.rend(); ++it)
    for (auto l = (*it)->ladder.rbegin(); l != (*it)->ladder.rend(); ++l)
      c.gates.emplace_back(gates::CX{l->first, l->second});
  for (const Encoding* e : wave)
    for (const auto& r : e->post) emit_rotation(c, r);
}

}  // namespace

Circuit schedule(std::size_t n_visible, const std::vector<Encoding>& encs,
                 double scalar_log_norm, const AncillaPolicy& policy,
                 std::size_t first_ancilla) {
  const std::size_t cap = policy.capacity();
  std::vector<std::vector<const Encoding*>> waves;
  for (const Encoding& e : encs) {
    if (waves.empty() || waves.back().size() >= cap || !fits_wave(waves.back(), e))
      waves.emplace_back();
    waves.back().push_back(&e);
  }
  Circuit c;
  c.n_visible = n_visible;
  std::size_t widest = 0;
  for (const auto& w : waves) widest = std::max(widest, w.size());
  c.n_ancilla = widest == 0 ? 0 : first_ancilla + widest;
  c.log_norm = scalar_log_norm;
  for (const auto& w : waves) emit_wave(c, w, n_visible + first_ancilla);
  return c;
}

namespace {

Circuit encode_fragment(std::vector<Encoding> encs, double scalar,
                        std::size_t n, std::size_t ancilla) {
  if (ancilla < n)
    throw std::invalid_argument("ancilla index overlaps the system register");
  Circuit c = schedule(n, encs, scalar, AncillaPolicy::single_reused(),
                       ancilla - n);
  c.n_ancilla = ancilla - n + 1;
  return c;
}

}  // namespace

Circuit encode_term_rbm(const HamiltonianTerm& term, double dtau,
                        std::size_t ancilla) {
  double scalar = 0.0;
  auto encs = rbm_block_encodings(
      {{term.coefficient * dtau, term.string}}, scalar);
  return encode_fragment(std::move(encs), scalar, term.string.size(), ancilla);
}

Circuit encode_term_cx(const HamiltonianTerm& term, double dtau,
                       std::size_t ancilla) {
  double scalar = 0.0;
  auto encs = cx_encodings({term.coefficient * dtau, term.string}, scalar);
  return encode_fragment(std::move(encs), scalar, term.string.size(), ancilla);
}

std::vector<HamiltonianTerm> trotter_sequence(const Hamiltonian& h, double dtau,
                                              int order) {
  if (order != 1 && order != 2)
    throw ConfigError(fmt::format("Trotter order {} (expected 1 or 2)", order));
  std::vector<HamiltonianTerm> seq;
  if (order == 1) {
    for (const auto& t : h.terms()) seq.push_back({t.coefficient * dtau, t.string});
    return seq;
  }
  std::vector<HamiltonianTerm> one_body, rest;
  for (const auto& t : h.terms())
    (t.string.weight() == 1 ? one_body : rest).push_back(t);
  for (const auto& t : one_body) seq.push_back({t.coefficient * dtau / 2, t.string});
  for (const auto& t : rest) seq.push_back({t.coefficient * dtau, t.string});
  for (const auto& t : one_body) seq.push_back({t.coefficient * dtau / 2, t.string});
  return seq;
}

Circuit trotter_step(const Hamiltonian& h, double dtau, int order, Route route,
                     const AncillaPolicy& policy) {
  if (!(dtau > 0.0) || !std::isfinite(dtau))
    throw ConfigError("time step must be positive");
  const auto seq = trotter_sequence(h, dtau, order);
  std::vector<Encoding> encs;
  double scalar = 0.0;
  if (route == Route::Cx) {
    for (const auto& t : seq) {
      auto e = cx_encodings(t, scalar);
      std::move(e.begin(), e.end(), std::back_inserter(encs));
    }
  } else {
    std::vector<HamiltonianTerm> block;
    PauliString letters(h.n_qubits());
    const auto flush = [&] {
      auto e = rbm_block_encodings(block, scalar);
      std::move(e.begin(), e.end(), std::back_inserter(encs));
      block.clear();
      letters = PauliString(h.n_qubits());
    };
    for (const auto& t : seq) {
      if (!qubitwise_compatible(letters, t.string)) flush();
      for (std::size_t q = 0; q < t.string.size(); ++q)
        if (t.string[q] != PauliOp::I) letters[q] = t.string[q];
      block.push_back(t);
    }
    flush();
  }
  return schedule(h.n_qubits(), encs, scalar, policy);
}

std::size_t trotter_step_count(double tau_total, double dtau) {
  if (!(dtau > 0.0) || !std::isfinite(dtau))
    throw ConfigError("time step must be positive");
  if (!(tau_total >= 0.0) || !std::isfinite(tau_total))
    throw ConfigError("total imaginary time must be non-negative");
  const double ratio = tau_total / dtau;
  const double n = std::round(ratio);
  if (std::abs(n * dtau - tau_total) > 1e-12 * std::max(1.0, tau_total))
    throw ConfigError(fmt::format(
        "tau = {} is not an integer multiple of dtau = {}", tau_total, dtau));
  return static_cast<std::size_t>(n);
}

Circuit build_qite_circuit(const Hamiltonian& h, double tau_total, double dtau,
                           int order, Route route,
                           const AncillaPolicy& policy) {
  const std::size_t steps = trotter_step_count(tau_total, dtau);
  const Circuit step = trotter_step(h, dtau, order, route, policy);
  Circuit c;
  c.n_visible = step.n_visible;
  c.n_ancilla = step.n_ancilla;
  c.gates.reserve(step.gates.size() * steps);
  for (std::size_t i = 0; i < steps; ++i) c.append(step);
  return c;
}

}  // namespace qite
