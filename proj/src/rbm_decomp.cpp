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


#include "qite/rbm_decomp.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qite/errors.hpp"

namespace qite {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(double K) { return K < 0 ? -1 : 1; }

PauliString z_string(std::size_t width, std::initializer_list<std::size_t> on) {
  PauliString p(width);
  for (std::size_t q : on) p[q] = PauliOp::Z;
  return p;
}

// In-place Walsh-Hadamard butterfly: out[P] = sum_x (-1)^{popcount(x&P)} in[x].
void walsh(std::vector<double>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t i = 0; i < v.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j], b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

// z_r = +1 for bit r clear, -1 for bit r set.
double unit_argument(const HiddenUnit& u, std::uint64_t x) {
  double arg = u.bias;
  for (std::size_t r = 0; r < u.weights.size(); ++r)
    arg += ((x >> r) & 1 ? -1.0 : 1.0) * u.weights[r].second;
  return arg;
}

}  // namespace

Decomposition decompose_one_body(double K) {
  if (!std::isfinite(K)) throw std::invalid_argument("non-finite coupling");
  const double a = std::abs(K);
  const double W = 0.5 * std::acos(std::exp(-2.0 * a));
  Decomposition d;
  d.log_norm = a - std::numbers::ln2;
  d.hidden_units.push_back({sign_of(K) * W, {{0, W}}});
  return d;
}

Decomposition decompose_two_body(double K) {
  if (!std::isfinite(K)) throw std::invalid_argument("non-finite coupling");
  const double a = std::abs(K);
  const double W = 0.5 * std::acos(std::exp(-2.0 * a));
  Decomposition d;
  d.log_norm = a - std::numbers::ln2;
  d.hidden_units.push_back({0.0, {{0, W}, {1, sign_of(K) * W}}});
  return d;
}

double three_body_weight(double K) {
  return 0.5 * std::atan(std::pow(-std::expm1(-8.0 * std::abs(K)), 0.25));
}

namespace {

// ln A = ln(1/2 [sec^4(2W) sec(4W)]^{1/8}).
double three_four_log_norm(double W) {
  return -std::numbers::ln2 -
         (4.0 * std::log(std::cos(2.0 * W)) + std::log(std::cos(4.0 * W))) /
             8.0;
}

}  // namespace

Decomposition decompose_three_body(double K) {
  if (!std::isfinite(K)) throw std::invalid_argument("non-finite coupling");
  if (K == 0.0) return {};
  const int s = sign_of(K);
  const double W = three_body_weight(K);
  const double k2 = -std::log(std::cos(4.0 * W)) / 8.0;
  Decomposition d;
  d.log_norm = three_four_log_norm(W);
  d.hidden_units.push_back({s * W, {{0, W}, {1, W}, {2, W}}});
  for (std::size_t q = 0; q < 3; ++q)
    d.induced_terms.push_back({s * k2, z_string(3, {q})});
  d.induced_terms.push_back({k2, z_string(3, {0, 1})});
  d.induced_terms.push_back({k2, z_string(3, {0, 2})});
  d.induced_terms.push_back({k2, z_string(3, {1, 2})});
  return d;
}

Decomposition decompose_four_body(double K) {
  if (!std::isfinite(K)) throw std::invalid_argument("non-finite coupling");
  if (K == 0.0) return {};
  const int s = sign_of(K);
  const double W = three_body_weight(K);
  const double k2 = -std::log(std::cos(4.0 * W)) / 8.0;
  Decomposition d;
  d.log_norm = three_four_log_norm(W);
  d.hidden_units.push_back({0.0, {{0, W}, {1, W}, {2, W}, {3, s * W}}});
  d.induced_terms.push_back({k2, z_string(4, {0, 1})});
  d.induced_terms.push_back({k2, z_string(4, {0, 2})});
  d.induced_terms.push_back({k2, z_string(4, {1, 2})});
  d.induced_terms.push_back({s * k2, z_string(4, {0, 3})});
  d.induced_terms.push_back({s * k2, z_string(4, {1, 3})});
  d.induced_terms.push_back({s * k2, z_string(4, {2, 3})});
  return d;
}

double alternating_coupling_sum(unsigned effective_order, double W) {
  const unsigned m = effective_order;
  double binom = 1.0;
  double sum = 0.0;
  for (unsigned k = 0; k <= m; ++k) {
    const double term =
        binom * std::log(std::cos((2.0 * k - static_cast<double>(m)) * W));
    sum += (k % 2 ? -term : term);
    binom = binom * (m - k) / (k + 1);
  }
  return std::ldexp(sum, -static_cast<int>(m));
}

GeneralWeight solve_general_weight(unsigned M, double K) {
  if (M == 0) throw std::invalid_argument("interaction order must be >= 1");
  if (!std::isfinite(K)) throw std::invalid_argument("non-finite coupling");
  GeneralWeight out;
  if (K == 0.0) return out;
  const unsigned m = M % 2 ? M + 1 : M;
  const double target = -std::abs(K);
  const auto f = [&](double w) { return alternating_coupling_sum(m, w) - target; };

  double lo = 0.0, hi = kPi / (2.0 * m) - 1e-9;
  double flo = -target, fhi = f(hi);
  if (!(fhi <= 0.0))
    throw std::domain_error(fmt::format(
        "|K| = {} lies beyond the order-{} solver bracket", -target, M));

  // Bisection down to a narrow bracket, then safeguarded secant steps.
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const bool narrow = hi - lo < 1e-4 * (kPi / (2.0 * m));
    w = 0.5 * (lo + hi);
    if (narrow && flo != fhi) {
      const double sec = hi - fhi * (hi - lo) / (fhi - flo);
      if (sec > lo && sec < hi) w = sec;
    }
    const double fw = f(w);
    if (fw == 0.0 || std::abs(fw) <= 1e-15) break;
    if (fw > 0.0) {
      lo = w;
      flo = fw;
    } else {
      hi = w;
      fhi = fw;
    }
    if (std::nextafter(lo, hi) >= hi) {
      w = std::abs(flo) < std::abs(fhi) ? lo : hi;
      break;
    }
  }
  out.weight = w;
  if (M % 2) {
    out.bias = K < 0 ? -w : w;
  } else {
    out.sign_flip = K < 0;
  }
  return out;
}

HiddenUnit general_unit(unsigned M, const GeneralWeight& w) {
  HiddenUnit u;
  u.bias = w.bias;
  for (unsigned r = 0; r < M; ++r)
    u.weights.emplace_back(r, (w.sign_flip && r + 1 == M) ? -w.weight
                                                          : w.weight);
  return u;
}

std::vector<double> induced_couplings(unsigned M, const HiddenUnit& unit) {
  if (M > kMaxWalshOrder)
    throw ConfigError(fmt::format("order {} exceeds the Walsh limit {}", M,
                                  kMaxWalshOrder));
  if (unit.weights.size() != M)
    throw std::invalid_argument("unit weight count differs from M");
  const std::uint64_t dim = std::uint64_t{1} << M;
  std::vector<double> v(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    const double c = std::cos(unit_argument(unit, x));
    if (!(c > 0.0)) throw std::domain_error("coupling at domain boundary");
    v[x] = std::log(2.0 * c);
  }
  walsh(v);
  const double scale = -std::ldexp(1.0, -static_cast<int>(M));
  for (double& k : v) k *= scale;
  return v;
}

std::vector<double> coupling_field(unsigned M, std::span<const double> K) {
  if (K.size() != (std::size_t{1} << M))
    throw std::invalid_argument("coupling vector must have 2^M entries");
  std::vector<double> v(K.begin(), K.end());
  walsh(v);
  for (double& x : v) x = -x;
  return v;
}

Decomposition decompose_general(unsigned M, double K) {
  const GeneralWeight w = solve_general_weight(M, K);
  if (w.weight == 0.0) return {};
  Decomposition d;
  d.hidden_units.push_back(general_unit(M, w));
  const auto k = induced_couplings(M, d.hidden_units.front());
  d.log_norm = k[0];
  const std::uint64_t full = (std::uint64_t{1} << M) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    if (std::abs(k[mask]) <= 1e-15) continue;
    PauliString p(M);
    for (unsigned r = 0; r < M; ++r)
      if ((mask >> r) & 1) p[r] = PauliOp::Z;
    d.induced_terms.push_back({k[mask], std::move(p)});
  }
  return d;
}

Decomposition embed(const Decomposition& d,
                    const std::vector<std::size_t>& qubits,
                    const PauliString& letters) {
  Decomposition out;
  out.log_norm = d.log_norm;
  for (const auto& u : d.hidden_units) {
    HiddenUnit v{u.bias, {}};
    for (const auto& [local, w] : u.weights) {
      if (local >= qubits.size())
        throw std::out_of_range("weight index outside the embedding");
      v.weights.emplace_back(qubits[local], w);
    }
    out.hidden_units.push_back(std::move(v));
  }
  for (const auto& t : d.induced_terms) {
    PauliString p(letters.size());
    for (std::size_t local = 0; local < t.string.size(); ++local)
      if (t.string[local] != PauliOp::I) p[qubits.at(local)] = letters[qubits[local]];
    out.induced_terms.push_back({t.coefficient, std::move(p)});
  }
  return out;
}

namespace {

Decomposition local_decomposition(unsigned order, double K) {
  switch (order) {
    case 1:
      return decompose_one_body(K);
    case 2:
      return decompose_two_body(K);
    case 3:
      return decompose_three_body(K);
    case 4:
      return decompose_four_body(K);
    default:
      return decompose_general(order, K);
  }
}

std::uint64_t z_mask(const PauliString& p) {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < p.size(); ++q)
    if (p[q] != PauliOp::I) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace

std::vector<Decomposition> decompose_diagonal_hamiltonian(const Hamiltonian& h,
                                                          double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("non-finite tau");
  const std::size_t n = h.n_qubits();
  if (n > 64) throw ConfigError("more than 64 qubits");
  // Coupling table keyed by qubit mask (bit q <=> qubit q).
  std::map<std::uint64_t, double> table;
  for (const auto& t : h.terms()) {
    if (!t.string.is_diagonal())
      throw std::invalid_argument(
          fmt::format("term {} is not Z-diagonal", t.string.word()));
    table[z_mask(t.string)] += tau * t.coefficient;
  }
  std::vector<Decomposition> out;
  if (tau == 0.0) return out;

  PauliString zs(n);
  for (std::size_t q = 0; q < n; ++q) zs[q] = PauliOp::Z;

  for (int order = static_cast<int>(n); order >= 1; --order) {
    std::vector<std::uint64_t> masks;
    for (const auto& [mask, K] : table)
      if (std::popcount(mask) == order && std::abs(K) > 1e-15)
        masks.push_back(mask);
    for (std::uint64_t mask : masks) {
      const double K = table[mask];
      table[mask] = 0.0;
      std::vector<std::size_t> qubits;
      for (std::size_t q = 0; q < n; ++q)
        if ((mask >> q) & 1) qubits.push_back(q);
      Decomposition d = embed(
          local_decomposition(static_cast<unsigned>(order), K), qubits, zs);
      if (d.hidden_units.empty()) continue;
      for (const auto& t : d.induced_terms)
        table[z_mask(t.string)] -= t.coefficient;
      out.push_back(std::move(d));
    }
  }
  if (const auto it = table.find(0); it != table.end() && it->second != 0.0) {
    Decomposition scalar;
    scalar.log_norm = -it->second;
    out.push_back(std::move(scalar));
  }
  return out;
}

// ---------------------------------------------------------------------------

double success_probability(const SuccessModel& model,
                           std::span<const double> alphas) {
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument(
          fmt::format("occupation probability {} outside [0, 1]", a));
  const double K = std::abs(model.coupling);
  if (model.kind == SuccessKind::TwoBody) {
    if (alphas.size() != 1)
      throw std::invalid_argument("two-body model takes one alpha");
    return std::clamp(1.0 + std::expm1(-4.0 * K) * alphas[0], 0.0, 1.0);
  }
  if (alphas.size() != 2)
    throw std::invalid_argument("three-body model takes two alphas");
  if (alphas[0] + alphas[1] > 1.0 + 1e-12)
    throw std::invalid_argument("alpha_2 + alpha_4 exceeds 1");
  const double W = three_body_weight(K);
  const double s2 = std::sin(2.0 * W), s4 = std::sin(4.0 * W);
  return std::clamp(1.0 - s2 * s2 * alphas[0] - s4 * s4 * alphas[1], 0.0,
                    1.0);
}

double average_success_probability(const SuccessModel& model) {
  const double K = std::abs(model.coupling);
  if (model.kind == SuccessKind::TwoBody)
    return 0.5 * (1.0 + std::exp(-4.0 * K));
  const double W = three_body_weight(K);
  const double c2 = std::cos(2.0 * W), c4 = std::cos(4.0 * W);
  return (3.0 + 4.0 * c2 * c2 + c4 * c4) / 8.0;
}

double average_success_probability(const HiddenUnit& unit) {
  const std::size_t M = unit.weights.size();
  if (M > 30) throw ConfigError("unit too wide for the basis-state average");
  const std::uint64_t dim = std::uint64_t{1} << M;
  double sum = 0.0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    const double c = std::cos(unit_argument(unit, x));
    sum += c * c;
  }
  return sum / static_cast<double>(dim);
}

// ---------------------------------------------------------------------------

namespace {

// Diagonal of the requested operator in the rotated (all-Z) frame.
Eigen::VectorXd diagonal_values(const Decomposition& d, std::size_t n,
                                bool with_induced) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::VectorXd diag(static_cast<Eigen::Index>(dim));
  const auto z = [n](std::uint64_t x, std::size_t q) {
    return (x >> (n - 1 - q)) & 1 ? -1.0 : 1.0;
  };
  for (std::uint64_t x = 0; x < dim; ++x) {
    double v = std::exp(d.log_norm);
    for (const auto& u : d.hidden_units) {
      double arg = u.bias;
      for (const auto& [q, w] : u.weights) arg += w * z(x, q);
      v *= 2.0 * std::cos(arg);
    }
    if (with_induced) {
      double e = 0.0;
      for (const auto& t : d.induced_terms) {
        double prod = t.coefficient;
        for (std::size_t q : t.string.support()) prod *= z(x, q);
        e += prod;
      }
      v *= std::exp(e);
    }
    diag(static_cast<Eigen::Index>(x)) = v;
  }
  return diag;
}

void check_letters(const Decomposition& d, const PauliString& letters) {
  for (const auto& u : d.hidden_units)
    for (const auto& [q, w] : u.weights)
      if (q >= letters.size() || letters[q] == PauliOp::I)
        throw std::invalid_argument(
            fmt::format("no Pauli letter for weighted qubit {}", q));
  for (const auto& t : d.induced_terms)
    if (t.string.size() > letters.size())
      throw std::invalid_argument("induced word wider than the letter map");
}

Eigen::MatrixXcd conjugate(const Eigen::VectorXd& diag,
                           const PauliString& letters) {
  PauliString full(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q)
    full[q] = letters[q] == PauliOp::I ? PauliOp::Z : letters[q];
  const auto layer = basis_rotation_layer(full);
  const auto n = letters.size();
  return rotation_matrix(layer.post_gates, n) *
         diag.cast<cplx>().asDiagonal() * rotation_matrix(layer.pre_gates, n);
}

void check_width(std::size_t n, unsigned limit) {
  if (n > limit)
    throw ConfigError(fmt::format(
        "{} qubits exceeds the dense-matrix limit of {}", n, limit));
}

}  // namespace

Eigen::MatrixXcd marginalized_dense(const Decomposition& d,
                                    const PauliString& letters,
                                    unsigned dense_limit) {
  check_width(letters.size(), dense_limit);
  check_letters(d, letters);
  return conjugate(diagonal_values(d, letters.size(), false), letters);
}

Eigen::MatrixXcd marginalized_dense(const std::vector<Decomposition>& ds,
                                    const PauliString& letters,
                                    unsigned dense_limit) {
  check_width(letters.size(), dense_limit);
  const auto dim = Eigen::Index{1} << letters.size();
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(dim);
  for (const auto& d : ds) {
    check_letters(d, letters);
    diag = diag.cwiseProduct(diagonal_values(d, letters.size(), false));
  }
  return conjugate(diag, letters);
}

Eigen::MatrixXcd reconstruct_dense(const Decomposition& d,
                                   const PauliString& letters,
                                   unsigned dense_limit) {
  check_width(letters.size(), dense_limit);
  check_letters(d, letters);
  return conjugate(diagonal_values(d, letters.size(), true), letters);
}

}  // namespace qite
