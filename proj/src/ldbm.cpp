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


#include "qite/ldbm.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qite/errors.hpp"
#include "qite/rbm_decomp.hpp"

namespace qite {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;
const cplx kI(0.0, 1.0);

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

double spin(ZIndex z, std::size_t n, std::size_t q) {
  return (z >> (n - 1 - q)) & 1 ? -1.0 : 1.0;
}

}  // namespace

LdbmNetwork::LdbmNetwork(std::size_t n_visible)
    : a_(Eigen::VectorXcd::Zero(ix(n_visible))),
      b_(0),
      W_(ix(n_visible), 0) {
  if (n_visible == 0 || n_visible > 30)
    throw std::invalid_argument("visible layer must hold 1..30 qubits");
}

cplx LdbmNetwork::lateral(std::size_t j, std::size_t k) const {
  if (j == k) return 0.0;
  const auto it = lat_.at(j).find(k);
  return it == lat_[j].end() ? cplx(0.0) : it->second;
}

void LdbmNetwork::set_lateral(std::size_t j, std::size_t k, cplx value) {
  if (j == k) throw std::invalid_argument("lateral self-coupling");
  if (value == 0.0) {
    lat_.at(j).erase(k);
    lat_.at(k).erase(j);
  } else {
    lat_.at(j)[k] = value;
    lat_.at(k)[j] = value;
  }
}

Eigen::MatrixXcd LdbmNetwork::lateral_matrix() const {
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(ix(n_hidden()), ix(n_hidden()));
  for (std::size_t j = 0; j < lat_.size(); ++j)
    for (const auto& [k, v] : lat_[j])
      if (j < k) L(ix(j), ix(k)) = v;
  return L;
}

std::size_t LdbmNetwork::lateral_count() const {
  std::size_t c = 0;
  for (const auto& m : lat_) c += m.size();
  return c / 2;
}

std::size_t LdbmNetwork::add_hidden(cplx bias) {
  const std::size_t j = n_hidden();
  b_.conservativeResize(ix(j + 1));
  b_(ix(j)) = bias;
  W_.conservativeResize(Eigen::NoChange, ix(j + 1));
  W_.col(ix(j)).setZero();
  lat_.emplace_back();
  return j;
}

bool LdbmNetwork::is_real(double tol) const {
  const auto real = [tol](cplx v) { return std::abs(v.imag()) <= tol; };
  for (Eigen::Index i = 0; i < a_.size(); ++i)
    if (!real(a_(i))) return false;
  for (Eigen::Index i = 0; i < b_.size(); ++i)
    if (!real(b_(i))) return false;
  for (Eigen::Index i = 0; i < W_.size(); ++i)
    if (!real(W_.data()[i])) return false;
  for (const auto& m : lat_)
    for (const auto& [k, v] : m)
      if (!real(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Marginalisation

namespace {

std::vector<cplx> hidden_fields(const LdbmNetwork& net, ZIndex z) {
  const std::size_t n = net.n_visible(), m = net.n_hidden();
  std::vector<cplx> theta(m);
  for (std::size_t j = 0; j < m; ++j) {
    cplx t = net.b()(ix(j));
    for (std::size_t i = 0; i < n; ++i) t += spin(z, n, i) * net.W()(ix(i), ix(j));
    theta[j] = t;
  }
  return theta;
}

cplx visible_phase(const LdbmNetwork& net, ZIndex z) {
  const std::size_t n = net.n_visible();
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += spin(z, n, i) * net.a()(ix(i));
  return s;
}

// Sum over hidden configurations without the e^{log_norm} prefactor.
cplx gray_sum(const LdbmNetwork& net, ZIndex z) {
  const std::size_t m = net.n_hidden();
  std::vector<cplx> f = hidden_fields(net, z);
  std::vector<int> h(m, 1);
  cplx E = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    E += f[j];
    for (const auto& [k, v] : net.neighbours(j))
      if (j < k) E += v;
  }
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [k, v] : net.neighbours(j)) f[j] += v;  // all h = +1
  cplx sum = std::exp(kI * E);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t t = 1; t < total; ++t) {
    const auto j = static_cast<std::size_t>(std::countr_zero(t));
    E -= 2.0 * double(h[j]) * f[j];
    h[j] = -h[j];
    for (const auto& [k, v] : net.neighbours(j)) f[k] += 2.0 * double(h[j]) * v;
    sum += std::exp(kI * E);
  }
  return sum * std::exp(kI * visible_phase(net, z));
}

void check_marginal_limit(std::size_t m, unsigned limit) {
  if (m > limit)
    throw ConfigError(fmt::format(
        "{} hidden units exceed the marginalisation limit of {}", m, limit));
}

// Factor over a set of hidden spins; entry bit k <=> scope[k] is -1.
struct Factor {
  std::vector<std::size_t> scope;
  std::vector<cplx> table;
  double log_scale = 0.0;
};

void rescale(Factor& f) {
  double mx = 0.0;
  for (const cplx& v : f.table) mx = std::max(mx, std::abs(v));
  if (mx > 0.0 && std::isfinite(mx)) {
    for (cplx& v : f.table) v /= mx;
    f.log_scale += std::log(mx);
  }
}

// Elimination order by greedy minimum degree on the lateral graph. The graph
// does not depend on z, so one order serves every configuration.
std::vector<std::size_t> elimination_order(const LdbmNetwork& net,
                                           unsigned max_width) {
  const std::size_t m = net.n_hidden();
  std::vector<std::set<std::size_t>> adj(m);
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [k, v] : net.neighbours(j)) adj[j].insert(k);
  std::vector<bool> done(m, false);
  std::vector<std::size_t> order;
  order.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = m, best_deg = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < m; ++j)
      if (!done[j] && adj[j].size() < best_deg) {
        best = j;
        best_deg = adj[j].size();
        if (best_deg == 0) break;
      }
    if (best_deg + 1 > max_width)
      throw ConfigError(fmt::format(
          "elimination width {} exceeds the contraction limit {}",
          best_deg + 1, max_width));
    done[best] = true;
    order.push_back(best);
    const std::vector<std::size_t> nb(adj[best].begin(), adj[best].end());
    for (std::size_t u : nb) {
      adj[u].erase(best);
      for (std::size_t v : nb)
        if (u != v) adj[u].insert(v);
    }
    adj[best].clear();
  }
  return order;
}

cplx contract(const LdbmNetwork& net, ZIndex z,
              const std::vector<std::size_t>& order) {
  const std::size_t m = net.n_hidden();
  const auto theta = hidden_fields(net, z);
  std::vector<Factor> factors;
  std::vector<std::vector<std::size_t>> touching(m);
  const auto add = [&](Factor f) {
    for (std::size_t v : f.scope) touching[v].push_back(factors.size());
    factors.push_back(std::move(f));
  };
  for (std::size_t j = 0; j < m; ++j)
    add({{j}, {std::exp(kI * theta[j]), std::exp(-kI * theta[j])}, 0.0});
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [k, v] : net.neighbours(j))
      if (j < k) {
        const cplx same = std::exp(kI * v), diff = std::exp(-kI * v);
        add({{j, k}, {same, diff, diff, same}, 0.0});
      }
  std::vector<bool> consumed(factors.size(), false);
  cplx log_total = 0.0;

  for (std::size_t var : order) {
    std::vector<std::size_t> live;
    for (std::size_t fi : touching[var])
      if (!consumed[fi]) live.push_back(fi);
    std::vector<std::size_t> scope;
    for (std::size_t fi : live)
      for (std::size_t v : factors[fi].scope)
        if (v != var) scope.push_back(v);
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

    Factor out{scope, std::vector<cplx>(std::size_t{1} << scope.size(), 0.0),
               0.0};
    // Position of each factor variable inside the joint index (scope + var).
    std::vector<std::vector<unsigned>> pos(live.size());
    for (std::size_t a = 0; a < live.size(); ++a) {
      out.log_scale += factors[live[a]].log_scale;
      for (std::size_t v : factors[live[a]].scope) {
        const auto it = std::lower_bound(scope.begin(), scope.end(), v);
        pos[a].push_back(v == var ? unsigned(scope.size())
                                  : unsigned(it - scope.begin()));
      }
    }
    const std::size_t joint = std::size_t{1} << (scope.size() + 1);
    for (std::size_t x = 0; x < joint; ++x) {
      cplx prod = 1.0;
      for (std::size_t a = 0; a < live.size(); ++a) {
        std::size_t local = 0;
        for (std::size_t k = 0; k < pos[a].size(); ++k)
          local |= ((x >> pos[a][k]) & 1) << k;
        prod *= factors[live[a]].table[local];
      }
      out.table[x & ((std::size_t{1} << scope.size()) - 1)] += prod;
    }
    for (std::size_t fi : live) consumed[fi] = true;
    rescale(out);
    if (out.scope.empty()) {
      log_total += out.log_scale + std::log(out.table[0]);
    } else {
      add(std::move(out));
      consumed.push_back(false);
    }
  }
  return log_total + kI * visible_phase(net, z);
}

}  // namespace

cplx amplitude(const LdbmNetwork& net, ZIndex z, unsigned marginal_limit) {
  check_marginal_limit(net.n_hidden(), marginal_limit);
  return std::exp(net.log_norm()) * gray_sum(net, z);
}

cplx log_amplitude_contracted(const LdbmNetwork& net, ZIndex z,
                              unsigned max_width) {
  return net.log_norm() + contract(net, z, elimination_order(net, max_width));
}

Eigen::VectorXcd raw_amplitudes(const LdbmNetwork& net,
                                unsigned marginal_limit) {
  check_marginal_limit(net.n_hidden(), marginal_limit);
  const std::uint64_t dim = std::uint64_t{1} << net.n_visible();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  const cplx pref = std::exp(net.log_norm());
  for (std::uint64_t z = 0; z < dim; ++z)
    v(static_cast<Eigen::Index>(z)) = pref * gray_sum(net, z);
  return v;
}

StateVector statevector(const LdbmNetwork& net, double* discarded_log_norm,
                        unsigned marginal_limit) {
  const std::size_t n = net.n_visible();
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  double shift = 0.0;
  if (net.n_hidden() <= marginal_limit) {
    for (std::uint64_t z = 0; z < dim; ++z)
      v(static_cast<Eigen::Index>(z)) = gray_sum(net, z);
    shift = 0.0;
  } else {
    const auto order = elimination_order(net, 22);
    std::vector<cplx> logs(dim);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::uint64_t z = 0; z < dim; ++z) {
      logs[z] = contract(net, z, order);
      if (std::isfinite(logs[z].real())) mx = std::max(mx, logs[z].real());
    }
    if (!std::isfinite(mx)) throw ZeroWeightError("all amplitudes vanish");
    for (std::uint64_t z = 0; z < dim; ++z)
      v(static_cast<Eigen::Index>(z)) = std::exp(logs[z] - mx);
    shift = mx;
  }
  // Global phase of e^{log_norm} kept so statevectors compare directly.
  v *= std::exp(kI * net.log_norm().imag());
  StateVector s(n, std::move(v));
  const double nrm = s.normalize();
  if (!(nrm > 0.0)) throw ZeroWeightError("all amplitudes vanish");
  if (discarded_log_norm)
    *discarded_log_norm = net.log_norm().real() + shift + std::log(nrm);
  return s;
}

// ---------------------------------------------------------------------------
// Gate rules

namespace {

void check_visible(const LdbmNetwork& net, std::size_t l) {
  if (l >= net.n_visible())
    throw std::out_of_range(fmt::format("visible index {} out of range", l));
}

// New unit coupled to l with weight pi/4; old couplings of l become laterals
// of the new unit with factor `lateral_sign` and are severed.
std::size_t sever_into_new_unit(LdbmNetwork& net, std::size_t l, cplx bias,
                                double lateral_sign) {
  const std::size_t old_m = net.n_hidden();
  const std::size_t h = net.add_hidden(bias);
  for (std::size_t j = 0; j < old_m; ++j) {
    const cplx w = net.W(l, j);
    if (w == 0.0) continue;
    net.set_lateral(j, h, lateral_sign * w);
    net.W(l, j) = 0.0;
  }
  net.W(l, h) = kQuarterPi;
  return h;
}

}  // namespace

LdbmNetwork apply_hx(const LdbmNetwork& net, std::size_t l) {
  check_visible(net, l);
  LdbmNetwork out = net;
  const cplx al = out.a(l);
  sever_into_new_unit(out, l, -(al + kQuarterPi), -1.0);
  out.a(l) = kQuarterPi;
  out.add_log_norm(-kI * kQuarterPi - 0.5 * std::numbers::ln2);
  return out;
}

LdbmNetwork apply_hy(const LdbmNetwork& net, std::size_t l) {
  check_visible(net, l);
  LdbmNetwork out = net;
  const cplx al = out.a(l);
  sever_into_new_unit(out, l, kQuarterPi - al, -1.0);
  out.a(l) = 0.0;
  out.add_log_norm(-0.5 * std::numbers::ln2);
  return out;
}

LdbmNetwork apply_hy_dag(const LdbmNetwork& net, std::size_t l) {
  check_visible(net, l);
  LdbmNetwork out = net;
  const cplx al = out.a(l);
  sever_into_new_unit(out, l, al, 1.0);
  out.a(l) = kQuarterPi;
  out.add_log_norm(-0.5 * std::numbers::ln2);
  return out;
}

LdbmNetwork apply_rz(const LdbmNetwork& net, std::size_t l, double phi) {
  check_visible(net, l);
  LdbmNetwork out = net;
  out.a(l) += phi;
  return out;
}

LdbmNetwork apply_rzz(const LdbmNetwork& net, std::size_t l1, std::size_t l2,
                      double phi) {
  check_visible(net, l1);
  check_visible(net, l2);
  if (l1 == l2) throw std::invalid_argument("rzz needs two distinct qubits");
  LdbmNetwork out = net;
  out.a(l1) += kQuarterPi;
  out.a(l2) += kQuarterPi;
  const std::size_t ha = out.add_hidden(-kQuarterPi);
  const std::size_t hb = out.add_hidden(phi + kQuarterPi);
  out.W(l1, ha) = kQuarterPi;
  out.W(l2, ha) = kQuarterPi;
  out.set_lateral(ha, hb, kQuarterPi);
  out.add_log_norm(-kI * kQuarterPi - std::numbers::ln2);
  return out;
}

LdbmNetwork apply_diagonal_imaginary(const LdbmNetwork& net,
                                     const HamiltonianTerm& term, double dtau) {
  if (term.string.size() != net.n_visible())
    throw std::invalid_argument("term width differs from the visible layer");
  if (!term.string.is_diagonal())
    throw std::invalid_argument(
        fmt::format("term {} is not Z-diagonal", term.string.word()));
  LdbmNetwork out = net;
  const Hamiltonian h(net.n_visible(), {term});
  for (const auto& d : decompose_diagonal_hamiltonian(h, dtau)) {
    out.add_log_norm(d.log_norm);
    for (const auto& u : d.hidden_units) {
      const std::size_t j = out.add_hidden(-u.bias);
      for (const auto& [q, w] : u.weights) out.W(q, j) -= w;
    }
  }
  return out;
}

LdbmNetwork apply_term_imaginary(const LdbmNetwork& net,
                                 const HamiltonianTerm& term, double dtau) {
  const auto layer = basis_rotation_layer(term.string);
  const auto rotate = [](LdbmNetwork n, const BasisRotation& r) {
    switch (r.kind) {
      case RotationKind::Hx:
        return apply_hx(n, r.qubit);
      case RotationKind::Hy:
        return apply_hy(n, r.qubit);
      case RotationKind::HyDag:
        return apply_hy_dag(n, r.qubit);
    }
    return n;
  };
  LdbmNetwork out = net;
  for (const auto& r : layer.pre_gates) out = rotate(std::move(out), r);
  out = apply_diagonal_imaginary(out, {term.coefficient, layer.diagonalized},
                                 dtau);
  for (const auto& r : layer.post_gates) out = rotate(std::move(out), r);
  return out;
}

LdbmNetwork zero_state_network(std::size_t n) {
  LdbmNetwork net(n);
  for (std::size_t q = 0; q < n; ++q) net = apply_hx(net, q);
  return net;
}

LdbmNetwork basis_state_network(std::string_view bits) {
  LdbmNetwork net(bits.size());
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] != '0' && bits[q] != '1')
      throw std::invalid_argument(fmt::format("invalid bit '{}'", bits[q]));
    // i Z |+> = i |->, then H^x |-> = |1>.
    if (bits[q] == '1') net = apply_rz(net, q, std::numbers::pi / 2);
    net = apply_hx(net, q);
  }
  return net;
}

}  // namespace qite
