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


#include "qite/serialize.hpp"

#include <fmt/format.h>

#include <bit>
#include <fstream>
#include <stdexcept>

#include "qite/errors.hpp"

namespace qite {

namespace {

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

json vec_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(cjson(v(i)));
  return out;
}

json mat_json(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cjson(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

json to_json(const Decomposition& d) {
  json units = json::array();
  for (const auto& u : d.hidden_units) {
    json w = json::array();
    for (const auto& [q, x] : u.weights) w.push_back(json::array({q, x}));
    units.push_back({{"bias", u.bias}, {"weights", std::move(w)}});
  }
  json induced = json::array();
  for (const auto& t : d.induced_terms)
    induced.push_back({{"coeff", t.coefficient}, {"word", t.string.word()}});
  return {{"log_norm", d.log_norm},
          {"hidden_units", std::move(units)},
          {"induced", std::move(induced)}};
}

json to_json(const Gate& g) {
  json j = {{"gate", gate_name(g)}};
  if (const auto* x = std::get_if<gates::Hx>(&g)) j["qubit"] = x->qubit;
  if (const auto* x = std::get_if<gates::Hy>(&g)) j["qubit"] = x->qubit;
  if (const auto* x = std::get_if<gates::HyDag>(&g)) j["qubit"] = x->qubit;
  if (const auto* x = std::get_if<gates::CX>(&g)) {
    j["control"] = x->control;
    j["target"] = x->target;
  }
  if (const auto* x = std::get_if<gates::PauliRotation>(&g)) {
    j["angle"] = x->angle;
    j["pauli"] = x->string.word();
  }
  if (const auto* x = std::get_if<gates::Measure>(&g)) {
    j["qubit"] = x->qubit;
    j["clbit"] = x->clbit;
  }
  if (const auto* x = std::get_if<gates::PostSelect>(&g)) {
    j["clbit"] = x->clbit;
    j["value"] = x->value;
  }
  if (const auto* x = std::get_if<gates::Reset>(&g)) j["qubit"] = x->qubit;
  return j;
}

std::string circuit_to_jsonl(const Circuit& c) {
  std::string out;
  for (const auto& g : c.gates) {
    out += to_json(g).dump();
    out += '\n';
  }
  return out;
}

json to_json(const CircuitSummary& s) {
  return {{"qubits", s.qubits},
          {"ancillas", s.ancillas},
          {"depth", s.depth},
          {"measure_waves", s.measure_waves},
          {"counts",
           {{"hx", s.hx},
            {"hy", s.hy},
            {"hydag", s.hy_dag},
            {"cx", s.cx},
            {"pauli_rotation", s.pauli_rotation},
            {"measure", s.measure},
            {"postselect", s.post_select},
            {"reset", s.reset}}}};
}

json to_json(const LdbmNetwork& net) {
  return {{"N", net.n_visible()},
          {"M", net.n_hidden()},
          {"a", vec_json(net.a())},
          {"b", vec_json(net.b())},
          {"W", mat_json(net.W())},
          {"L", mat_json(net.lateral_matrix())},
          {"log_norm", cjson(net.log_norm())}};
}

json to_json(const DbmNetwork& net) {
  return {{"N", net.n_visible()},
          {"M", net.n_hidden()},
          {"M_deep", net.n_deep()},
          {"a", vec_json(net.a)},
          {"b", vec_json(net.b)},
          {"b_deep", vec_json(net.b_deep)},
          {"W", mat_json(net.W)},
          {"W_deep", mat_json(net.W_deep)},
          {"log_norm", cjson(net.log_norm)}};
}

json to_json(const StateVector& s) { return vec_json(s.amplitudes()); }

StateVector state_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError(0, "state JSON must be a non-empty amplitude array");
  const std::size_t dim = j.size();
  if (!std::has_single_bit(dim))
    throw ParseError(0, fmt::format("{} amplitudes is not a power of two", dim));
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    const json& e = j[k];
    if (e.is_number()) {
      v(Eigen::Index(k)) = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      v(Eigen::Index(k)) = cplx(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ParseError(0, fmt::format("amplitude {} is not a number or "
                                      "[re, im] pair", k));
    }
  }
  StateVector s(static_cast<std::size_t>(std::countr_zero(dim)), std::move(v));
  if (!(s.normalize() > 0.0)) throw ParseError(0, "state has zero norm");
  return s;
}

StateVector load_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(0, fmt::format("{}: {}", path, e.what()));
  }
  return state_from_json(j);
}

}  // namespace qite
