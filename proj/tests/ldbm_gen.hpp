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

#include <random>

#include "qite/ldbm.hpp"

namespace testgen {

/// Random network with real parameters, sparse laterals, complex log_norm.
inline qite::LdbmNetwork random_network(std::size_t n, std::size_t m,
                                        std::mt19937_64& rng,
                                        double lateral_prob = 0.3) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  qite::LdbmNetwork net(n);
  for (std::size_t i = 0; i < n; ++i) net.a(i) = u(rng);
  for (std::size_t j = 0; j < m; ++j) {
    net.add_hidden(u(rng));
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng) < 0.7) net.W(i, j) = u(rng);
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k)
      if (coin(rng) < lateral_prob) net.set_lateral(j, k, u(rng));
  net.add_log_norm({0.1 * u(rng), u(rng)});
  return net;
}

}  // namespace testgen
