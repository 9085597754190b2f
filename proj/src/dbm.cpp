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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "qite/errors.hpp"
#include "qite/ldbm.hpp"

namespace qite {

namespace {

const cplx kI(0.0, 1.0);

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

double spin(ZIndex z, std::size_t n, std::size_t q) {
  return (z >> (n - 1 - q)) & 1 ? -1.0 : 1.0;
}

}  // namespace

cplx amplitude(const DbmNetwork& net, ZIndex z, unsigned marginal_limit) {
  const std::size_t n = net.n_visible(), m = net.n_hidden(), md = net.n_deep();
  if (md > marginal_limit)
    throw ConfigError(fmt::format(
        "{} deep units exceed the marginalisation limit of {}", md,
        marginal_limit));
  Eigen::VectorXcd field = net.b;
  cplx vis = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = spin(z, n, i);
    vis += s * net.a(ix(i));
    if (m) field += s * net.W.row(ix(i)).transpose();
  }
  cplx total = 0.0;
  const std::uint64_t configs = std::uint64_t{1} << md;
  Eigen::VectorXd d(ix(md));
  for (std::uint64_t x = 0; x < configs; ++x) {
    cplx deep = 0.0;
    for (std::size_t k = 0; k < md; ++k) {
      d(ix(k)) = (x >> k) & 1 ? -1.0 : 1.0;
      deep += d(ix(k)) * net.b_deep(ix(k));
    }
    cplx term = std::exp(kI * deep);
    for (std::size_t j = 0; j < m; ++j) {
      cplx f = field(ix(j));
      for (std::size_t k = 0; k < md; ++k) f += net.W_deep(ix(j), ix(k)) * d(ix(k));
      term *= 2.0 * std::cos(f);
    }
    total += term;
  }
  return std::exp(net.log_norm + kI * vis) * total;
}

Eigen::VectorXcd raw_amplitudes(const DbmNetwork& net,
                                unsigned marginal_limit) {
  const std::uint64_t dim = std::uint64_t{1} << net.n_visible();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (std::uint64_t z = 0; z < dim; ++z)
    v(static_cast<Eigen::Index>(z)) = amplitude(net, z, marginal_limit);
  return v;
}

namespace {

// Wt with cos(2 Wt) = e^{2iW}: e^{i x y W} = (e^{-iW}/2) sum_h e^{-i Wt (x+y) h}.
cplx continued_weight(cplx w) {
  const cplx e = std::exp(2.0 * kI * w);
  if (std::abs(e - 1.0) < 1e-14 || std::abs(e + 1.0) < 1e-14)
    throw std::domain_error(
        fmt::format("coupling {}+{}i sits on an arccos branch point",
                    w.real(), w.imag()));
  return 0.5 * std::acos(e);
}

}  // namespace

DbmNetwork ldbm_to_dbm(const LdbmNetwork& net) {
  const std::size_t n = net.n_visible(), m = net.n_hidden();
  std::vector<std::size_t> hidden_of(m, SIZE_MAX), deep_of(m, SIZE_MAX);
  std::size_t n_hidden = 0, n_deep = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (net.neighbours(j).empty())
      hidden_of[j] = n_hidden++;
    else
      deep_of[j] = n_deep++;
  }
  // New hidden units: (visible or npos, deep a, deep b or npos, Wt).
  struct Bridge {
    std::size_t visible, deep_a, deep_b;
    cplx wt;
  };
  std::vector<Bridge> bridges;
  cplx log_norm = net.log_norm();
  for (std::size_t j = 0; j < m; ++j) {
    if (deep_of[j] == SIZE_MAX) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx w = net.W()(ix(i), ix(j));
      if (w == 0.0) continue;
      bridges.push_back({i, deep_of[j], SIZE_MAX, continued_weight(w)});
      log_norm += -kI * w - std::numbers::ln2;
    }
    for (const auto& [k, w] : net.neighbours(j)) {
      if (k < j) continue;
      bridges.push_back({SIZE_MAX, deep_of[j], deep_of[k], continued_weight(w)});
      log_norm += -kI * w - std::numbers::ln2;
    }
  }

  DbmNetwork d;
  const std::size_t total_hidden = n_hidden + bridges.size();
  d.a = net.a();
  d.b = Eigen::VectorXcd::Zero(ix(total_hidden));
  d.b_deep = Eigen::VectorXcd::Zero(ix(n_deep));
  d.W = Eigen::MatrixXcd::Zero(ix(n), ix(total_hidden));
  d.W_deep = Eigen::MatrixXcd::Zero(ix(total_hidden), ix(n_deep));
  d.log_norm = log_norm;
  for (std::size_t j = 0; j < m; ++j) {
    if (hidden_of[j] != SIZE_MAX) {
      d.b(ix(hidden_of[j])) = net.b()(ix(j));
      d.W.col(ix(hidden_of[j])) = net.W().col(ix(j));
    } else {
      d.b_deep(ix(deep_of[j])) = net.b()(ix(j));
    }
  }
  for (std::size_t k = 0; k < bridges.size(); ++k) {
    const auto& br = bridges[k];
    const auto h = ix(n_hidden + k);
    if (br.visible != SIZE_MAX) d.W(ix(br.visible), h) = -br.wt;
    d.W_deep(h, ix(br.deep_a)) = -br.wt;
    if (br.deep_b != SIZE_MAX) d.W_deep(h, ix(br.deep_b)) = -br.wt;
  }
  return d;
}

}  // namespace qite
