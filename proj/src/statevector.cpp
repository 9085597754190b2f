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


#include "qite/statevector.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qite {

namespace {

Eigen::Index idx(std::uint64_t x) { return static_cast<Eigen::Index>(x); }

// pauli_phase with the per-string factors hoisted out of the amplitude loop.
struct PhaseTable {
  explicit PhaseTable(const PauliString& p) : mask(p.phase_mask()) {
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    base = kIPow[p.y_count() % 4];
  }
  cplx operator()(std::uint64_t x) const {
    return std::popcount(x & mask) & 1 ? -base : base;
  }
  std::uint64_t mask;
  cplx base;
};

}  // namespace

StateVector::StateVector(std::size_t n_qubits)
    : n_(n_qubits), amp_(Eigen::VectorXcd::Zero(idx(std::uint64_t{1} << n_qubits))) {
  if (n_qubits > 30) throw std::invalid_argument("state vector too wide");
  amp_(0) = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes)
    : n_(n_qubits), amp_(std::move(amplitudes)) {
  if (amp_.size() != idx(std::uint64_t{1} << n_qubits))
    throw std::invalid_argument(fmt::format(
        "{} amplitudes given for {} qubits", amp_.size(), n_qubits));
}

StateVector StateVector::plus(std::size_t n) {
  const auto dim = idx(std::uint64_t{1} << n);
  return StateVector(
      n, Eigen::VectorXcd::Constant(dim, cplx(1.0 / std::sqrt(double(dim)), 0)));
}

StateVector StateVector::basis(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("empty basis bitstring");
  std::uint64_t x = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument(fmt::format("invalid bit '{}'", c));
    x = (x << 1) | std::uint64_t(c == '1');
  }
  StateVector s(bits.size());
  s.amp_(0) = 0.0;
  s.amp_(idx(x)) = 1.0;
  return s;
}

double StateVector::normalize() {
  const double nrm = amp_.norm();
  if (nrm > 0.0) amp_ /= nrm;
  return nrm;
}

void StateVector::apply_1q(std::size_t q, const Eigen::Matrix2cd& u) {
  const std::uint64_t m = bit(q);
  for (std::uint64_t x = 0; x < dim(); ++x) {
    if (x & m) continue;
    const cplx a0 = amp_(idx(x)), a1 = amp_(idx(x | m));
    amp_(idx(x)) = u(0, 0) * a0 + u(0, 1) * a1;
    amp_(idx(x | m)) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void StateVector::apply_cx(std::size_t control, std::size_t target) {
  const std::uint64_t c = bit(control), t = bit(target);
  for (std::uint64_t x = 0; x < dim(); ++x)
    if ((x & c) && !(x & t)) std::swap(amp_(idx(x)), amp_(idx(x | t)));
}

void StateVector::apply_x(std::size_t q) {
  const std::uint64_t m = bit(q);
  for (std::uint64_t x = 0; x < dim(); ++x)
    if (!(x & m)) std::swap(amp_(idx(x)), amp_(idx(x | m)));
}

void StateVector::apply_pauli(const PauliString& p) {
  const PhaseTable ph(p);
  Eigen::VectorXcd out(amp_.size());
  const std::uint64_t flip = p.flip_mask();
  for (std::uint64_t x = 0; x < dim(); ++x)
    out(idx(x ^ flip)) = ph(x) * amp_(idx(x));
  amp_ = std::move(out);
}

void StateVector::apply_pauli_rotation(double theta, const PauliString& p) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const cplx mis(0, -s);
  const PhaseTable ph(p);
  const std::uint64_t flip = p.flip_mask();
  if (flip == 0) {
    for (std::uint64_t x = 0; x < dim(); ++x)
      amp_(idx(x)) *= c + mis * ph(x);
    return;
  }
  // Pair x with x ^ flip; P|x> = ph(x)|x^flip>.
  for (std::uint64_t x = 0; x < dim(); ++x) {
    const std::uint64_t y = x ^ flip;
    if (y < x) continue;
    const cplx ax = amp_(idx(x)), ay = amp_(idx(y));
    amp_(idx(x)) = c * ax + mis * ph(y) * ay;
    amp_(idx(y)) = c * ay + mis * ph(x) * ax;
  }
}

void StateVector::apply_pauli_axpy(double t, const PauliString& p) {
  const PhaseTable ph(p);
  Eigen::VectorXcd pp(amp_.size());
  const std::uint64_t flip = p.flip_mask();
  for (std::uint64_t x = 0; x < dim(); ++x)
    pp(idx(x ^ flip)) = ph(x) * amp_(idx(x));
  amp_ -= t * pp;
}

double StateVector::weight_one(std::size_t q) const {
  const std::uint64_t m = bit(q);
  double w = 0.0;
  for (std::uint64_t x = 0; x < dim(); ++x)
    if (x & m) w += std::norm(amp_(idx(x)));
  return w;
}

double StateVector::project(std::size_t q, int value) {
  const std::uint64_t m = bit(q);
  double kept = 0.0;
  for (std::uint64_t x = 0; x < dim(); ++x) {
    if (bool(x & m) == bool(value))
      kept += std::norm(amp_(idx(x)));
    else
      amp_(idx(x)) = 0.0;
  }
  return kept;
}

cplx StateVector::expectation(const PauliString& p) const {
  if (p.size() != n_)
    throw std::invalid_argument("Pauli string width differs from state");
  const PhaseTable ph(p);
  const std::uint64_t flip = p.flip_mask();
  cplx acc = 0.0;
  for (std::uint64_t x = 0; x < dim(); ++x)
    acc += std::conj(amp_(idx(x ^ flip))) * ph(x) * amp_(idx(x));
  return acc;
}

StateVector StateVector::take_leading(std::size_t n_keep, double tol) const {
  if (n_keep > n_) throw std::invalid_argument("cannot keep more qubits");
  const std::size_t k = n_ - n_keep;
  const std::uint64_t low = (std::uint64_t{1} << k) - 1;
  double total = 0.0, stray = 0.0;
  Eigen::VectorXcd out(idx(std::uint64_t{1} << n_keep));
  for (std::uint64_t x = 0; x < dim(); ++x) {
    const double w = std::norm(amp_(idx(x)));
    total += w;
    if (x & low)
      stray += w;
    else
      out(idx(x >> k)) = amp_(idx(x));
  }
  if (stray > tol * std::max(total, 1e-300))
    throw std::logic_error(fmt::format(
        "trailing qubits not in |0>: stray weight fraction {:.3g}",
        stray / total));
  return StateVector(n_keep, std::move(out));
}

StateVector StateVector::padded(std::size_t k) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(idx(dim() << k));
  for (std::uint64_t x = 0; x < dim(); ++x) out(idx(x << k)) = amp_(idx(x));
  return StateVector(n_ + k, std::move(out));
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(a.dot(b)) / (na * nb);
}

double fidelity(const StateVector& a, const StateVector& b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

}  // namespace qite
