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


#include "qite/simulator.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qite/errors.hpp"
#include "qite/rng.hpp"

namespace qite {

namespace {

// Circuit lowered to amplitude-level kernels.
struct Op {
  enum class Kind { U1, Cx, Rot, Measure, PostSelect, Reset } kind = Kind::U1;
  std::size_t q = 0, q2 = 0;
  Eigen::Matrix2cd u;
  PauliString p;
  double theta = 0.0;
  int value = 0;
};

std::vector<Op> lower(const Circuit& c) {
  std::vector<Op> ops;
  ops.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    Op op;
    if (const auto* x = std::get_if<gates::Hx>(&g)) {
      op.q = x->qubit;
      op.u = hx_matrix();
    } else if (const auto* y = std::get_if<gates::Hy>(&g)) {
      op.q = y->qubit;
      op.u = hy_matrix();
    } else if (const auto* yd = std::get_if<gates::HyDag>(&g)) {
      op.q = yd->qubit;
      op.u = hy_dag_matrix();
    } else if (const auto* cx = std::get_if<gates::CX>(&g)) {
      op.kind = Op::Kind::Cx;
      op.q = cx->control;
      op.q2 = cx->target;
    } else if (const auto* r = std::get_if<gates::PauliRotation>(&g)) {
      op.kind = Op::Kind::Rot;
      op.theta = r->angle;
      op.p = r->string;
    } else if (const auto* m = std::get_if<gates::Measure>(&g)) {
      op.kind = Op::Kind::Measure;
      op.q = m->qubit;
      op.q2 = m->clbit;
    } else if (const auto* ps = std::get_if<gates::PostSelect>(&g)) {
      op.kind = Op::Kind::PostSelect;
      op.q2 = ps->clbit;
      op.value = ps->value;
    } else if (const auto* rs = std::get_if<gates::Reset>(&g)) {
      op.kind = Op::Kind::Reset;
      op.q = rs->qubit;
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

void check_width(const Circuit& c, const StateVector& psi0, unsigned limit) {
  if (psi0.n_qubits() != c.n_visible)
    throw std::invalid_argument(fmt::format(
        "initial state has {} qubits, circuit register {}", psi0.n_qubits(),
        c.n_visible));
  if (c.n_qubits() > limit)
    throw ConfigError(fmt::format("{} qubits exceeds the dense limit of {}",
                                  c.n_qubits(), limit));
}

void apply_unitary(StateVector& s, const Op& op) {
  switch (op.kind) {
    case Op::Kind::U1:
      s.apply_1q(op.q, op.u);
      break;
    case Op::Kind::Cx:
      s.apply_cx(op.q, op.q2);
      break;
    case Op::Kind::Rot:
      s.apply_pauli_rotation(op.theta, op.p);
      break;
    default:
      break;
  }
}

// Factors a qubit out of a product state and re-prepares it in |0>.
void exact_reset(StateVector& s, std::size_t q) {
  const std::uint64_t m = s.bit(q);
  auto& a = s.amplitudes();
  double w0 = 0, w1 = 0;
  cplx overlap = 0;
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    if (x & m) continue;
    const cplx a0 = a(Eigen::Index(x)), a1 = a(Eigen::Index(x | m));
    w0 += std::norm(a0);
    w1 += std::norm(a1);
    overlap += std::conj(a0) * a1;
  }
  if (w1 <= 1e-30 * (w0 + w1)) {
    for (std::uint64_t x = 0; x < s.dim(); ++x)
      if (x & m) a(Eigen::Index(x)) = 0.0;
    return;
  }
  if (std::norm(overlap) < (1.0 - 1e-10) * w0 * w1)
    throw std::logic_error(
        fmt::format("reset of qubit {}: not in a product state", q));
  const bool keep0 = w0 >= w1;
  const double scale = std::sqrt((w0 + w1) / (keep0 ? w0 : w1));
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    if (x & m) continue;
    if (!keep0) a(Eigen::Index(x)) = a(Eigen::Index(x | m));
    a(Eigen::Index(x)) *= scale;
    a(Eigen::Index(x | m)) = 0.0;
  }
}

}  // namespace

ExactRunResult run_exact(const Circuit& c, const StateVector& psi0,
                         unsigned dense_limit) {
  check_width(c, psi0, dense_limit);
  StateVector s = psi0.padded(c.n_ancilla);
  s.normalize();
  std::vector<std::size_t> bit_qubit(c.n_clbits, 0);
  ExactRunResult r;
  r.log_norm = c.log_norm;
  for (const Op& op : lower(c)) {
    switch (op.kind) {
      case Op::Kind::Measure:
        bit_qubit.at(op.q2) = op.q;
        break;
      case Op::Kind::PostSelect: {
        const double p = s.project(bit_qubit.at(op.q2), op.value);
        if (!(p >= 1e-300))
          throw ZeroWeightError(fmt::format(
              "zero-weight trajectory (branch probability {:.3g})", p));
        s.normalize();
        r.cumulative_success *= p;
        r.log_success += std::log(p);
        ++r.post_selections;
        break;
      }
      case Op::Kind::Reset:
        exact_reset(s, op.q);
        break;
      default:
        apply_unitary(s, op);
    }
  }
  for (std::size_t a = c.n_visible; a < c.n_qubits(); ++a) exact_reset(s, a);
  r.state = s.take_leading(c.n_visible);
  r.state.normalize();
  return r;
}

namespace {

int measure_qubit(StateVector& s, std::size_t q, Philox& rng) {
  const double p1 = s.weight_one(q);
  const int outcome = rng.uniform() < p1 ? 1 : 0;
  s.project(q, outcome);
  s.normalize();
  return outcome;
}

std::uint64_t sample_index(const StateVector& s, Philox& rng) {
  const double u = rng.uniform() * s.amplitudes().squaredNorm();
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    const double w = std::norm(s[x]);
    if (w == 0.0) continue;
    acc += w;
    last_nonzero = x;
    if (u < acc) return x;
  }
  return last_nonzero;
}

void run_stream(const Circuit& c, const std::vector<Op>& ops,
                const StateVector& start, std::size_t n_shots, Philox& rng,
                const ShotOptions& opts, std::vector<ShotOutcome>& out) {
  std::vector<std::uint8_t> bits(c.n_clbits, 0);
  PauliString basis = opts.basis.size() ? opts.basis : PauliString(c.n_visible);
  if (basis.size() != c.n_visible)
    throw std::invalid_argument("terminal basis width differs from register");
  out.reserve(out.size() + n_shots);
  for (std::size_t shot = 0; shot < n_shots; ++shot) {
    StateVector s = start;
    ShotOutcome o;
    o.accepted = true;
    for (const Op& op : ops) {
      if (op.kind == Op::Kind::Measure) {
        bits[op.q2] = static_cast<std::uint8_t>(measure_qubit(s, op.q, rng));
      } else if (op.kind == Op::Kind::PostSelect) {
        if (bits[op.q2] != op.value) {
          o.accepted = false;
          break;
        }
      } else if (op.kind == Op::Kind::Reset) {
        const double p1 = s.weight_one(op.q);
        if (p1 > 1e-15) {
          const int b = p1 > 1.0 - 1e-15 ? 1 : measure_qubit(s, op.q, rng);
          if (b) s.apply_x(op.q);
        }
      } else {
        apply_unitary(s, op);
      }
    }
    if (o.accepted) {
      for (std::size_t q = 0; q < c.n_visible; ++q) {
        if (basis[q] == PauliOp::X) s.apply_1q(q, hx_matrix());
        if (basis[q] == PauliOp::Y) s.apply_1q(q, hy_dag_matrix());
      }
      o.sample = sample_index(s, rng) >> c.n_ancilla;
    }
    if (opts.record_bits) o.bits = bits;
    out.push_back(std::move(o));
  }
}

}  // namespace

std::vector<ShotOutcome> run_shots(const Circuit& c, const StateVector& psi0,
                                   std::size_t n_shots, std::uint64_t seed,
                                   const ShotOptions& opts,
                                   unsigned dense_limit) {
  check_width(c, psi0, dense_limit);
  StateVector start = psi0.padded(c.n_ancilla);
  start.normalize();
  Philox rng(seed);
  std::vector<ShotOutcome> out;
  run_stream(c, lower(c), start, n_shots, rng, opts, out);
  return out;
}

std::vector<std::vector<ShotOutcome>> run_shot_batches(
    const Circuit& c, const StateVector& psi0, std::size_t n_shots,
    std::size_t n_batches, std::uint64_t seed, const ShotOptions& opts,
    unsigned threads, unsigned dense_limit) {
  if (n_batches == 0 || n_shots % n_batches != 0)
    throw ConfigError(fmt::format("{} shots cannot be split into {} batches",
                                  n_shots, n_batches));
  check_width(c, psi0, dense_limit);
  StateVector start = psi0.padded(c.n_ancilla);
  start.normalize();
  const auto ops = lower(c);
  const std::size_t per_batch = n_shots / n_batches;
  std::vector<std::vector<ShotOutcome>> out(n_batches);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_batches));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t b; (b = next++) < n_batches && !failed;) {
      try {
        Philox rng(seed ^ b);
        run_stream(c, ops, start, per_batch, rng, opts, out[b]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

double expectation(const StateVector& psi, const Hamiltonian& h) {
  if (psi.n_qubits() != h.n_qubits())
    throw std::invalid_argument("state and Hamiltonian widths differ");
  cplx e = 0.0;
  for (const auto& t : h.terms()) e += t.coefficient * psi.expectation(t.string);
  const double nrm = psi.amplitudes().squaredNorm();
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real())))
    throw std::logic_error("expectation value has an imaginary part");
  return e.real() / nrm;
}

std::vector<MeasurementGroup> measurement_groups(const Hamiltonian& h) {
  std::vector<MeasurementGroup> groups;
  for (const auto& t : h.terms()) {
    MeasurementGroup* home = nullptr;
    for (auto& g : groups)
      if (qubitwise_compatible(g.basis, t.string)) {
        home = &g;
        break;
      }
    if (!home) {
      groups.push_back({{}, PauliString(h.n_qubits())});
      home = &groups.back();
    }
    home->terms.push_back(t);
    for (std::size_t q = 0; q < t.string.size(); ++q)
      if (t.string[q] != PauliOp::I) home->basis[q] = t.string[q];
  }
  return groups;
}

int sample_eigenvalue(const PauliString& p, std::uint64_t sample) {
  std::uint64_t mask = 0;
  const std::size_t n = p.size();
  for (std::size_t q = 0; q < n; ++q)
    if (p[q] != PauliOp::I) mask |= std::uint64_t{1} << (n - 1 - q);
  return std::popcount(sample & mask) & 1 ? -1 : 1;
}

GroupEstimate expectation_from_samples(const std::vector<ShotOutcome>& shots,
                                       const MeasurementGroup& group) {
  GroupEstimate est;
  est.term_means.assign(group.terms.size(), 0.0);
  for (const auto& s : shots) {
    if (!s.accepted) continue;
    ++est.accepted;
    for (std::size_t k = 0; k < group.terms.size(); ++k)
      est.term_means[k] += sample_eigenvalue(group.terms[k].string, s.sample);
  }
  if (est.accepted == 0) throw std::runtime_error("no accepted samples");
  for (std::size_t k = 0; k < group.terms.size(); ++k) {
    est.term_means[k] /= static_cast<double>(est.accepted);
    est.energy += group.terms[k].coefficient * est.term_means[k];
  }
  return est;
}

StateVector imaginary_time_oracle(const Hamiltonian& h, double tau,
                                  const StateVector& psi0,
                                  unsigned dense_limit) {
  if (psi0.n_qubits() != h.n_qubits())
    throw std::invalid_argument("state and Hamiltonian widths differ");
  const Eigen::MatrixXcd H = dense_matrix(h, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd& V = es.eigenvectors();
  Eigen::VectorXcd coeff = V.adjoint() * psi0.amplitudes();
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    coeff(k) *= std::exp(-tau * (lam(k) - lam(0)));
  StateVector out(h.n_qubits(), V * coeff);
  if (!(out.normalize() > 1e-300))
    throw ZeroWeightError("initial state annihilated by the propagator");
  return out;
}

StateVector trotterized_oracle(const Hamiltonian& h, double tau, double dtau,
                               int order, const StateVector& psi0) {
  if (psi0.n_qubits() != h.n_qubits())
    throw std::invalid_argument("state and Hamiltonian widths differ");
  const std::size_t steps = trotter_step_count(tau, dtau);
  const auto seq = trotter_sequence(h, dtau, order);
  StateVector s = psi0;
  s.normalize();
  for (std::size_t i = 0; i < steps; ++i)
    for (const auto& f : seq) {
      // exp(-k P) = cosh(k) (1 - tanh(k) P)
      s.apply_pauli_axpy(std::tanh(f.coefficient), f.string);
      if (!(s.normalize() > 1e-300))
        throw ZeroWeightError("initial state annihilated by the propagator");
    }
  return s;
}

Spectrum exact_spectrum(const Hamiltonian& h, unsigned dense_limit) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h, dense_limit));
  Spectrum sp;
  sp.ground_energy = es.eigenvalues()(0);
  sp.gap = es.eigenvalues().size() > 1
               ? es.eigenvalues()(1) - es.eigenvalues()(0)
               : 0.0;
  sp.ground_state = StateVector(h.n_qubits(), es.eigenvectors().col(0));
  return sp;
}

}  // namespace qite
