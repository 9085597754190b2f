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

#include <json.hpp>
#include <string>

#include "qite/circuit.hpp"
#include "qite/ldbm.hpp"
#include "qite/rbm_decomp.hpp"
#include "qite/statevector.hpp"

namespace qite {

using json = nlohmann::json;

/// {log_norm, hidden_units:[{bias, weights:[[qubit, w], ...]}],
///  induced:[{coeff, word}]}
json to_json(const Decomposition& d);
json to_json(const Gate& g);
/// One gate object per line.
std::string circuit_to_jsonl(const Circuit& c);
/// {qubits, ancillas, depth, log_norm, counts:{...}}
json to_json(const CircuitSummary& s);
/// {N, M, a, b, W, L, log_norm}; complex numbers as [re, im].
json to_json(const LdbmNetwork& net);
json to_json(const DbmNetwork& net);
json to_json(const StateVector& s);

/// Amplitude list as [[re, im], ...] or plain reals; length must be 2^n.
StateVector state_from_json(const json& j);
StateVector load_state_json(const std::string& path);

}  // namespace qite
