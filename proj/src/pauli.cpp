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

#include "qite/pauli.hpp"

#include <fmt/format.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qite/errors.hpp"

namespace qite {

char to_char(PauliOp op) {
  switch (op) {
    case PauliOp::I:
      return 'I';
    case PauliOp::X:
      return 'X';
    case PauliOp::Y:
      return 'Y';
    case PauliOp::Z:
      return 'Z';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return PauliOp::I;
    case 'X':
      return PauliOp::X;
    case 'Y':
      return PauliOp::Y;
    case 'Z':
      return PauliOp::Z;
    default:
      throw std::invalid_argument(
          fmt::format("invalid Pauli character '{}'", c));
  }
}

PauliString PauliString::from_word(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("empty Pauli word");
  std::vector<PauliOp> ops;
  ops.reserve(word.size());
  for (char c : word) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < ops_.size(); ++q)
    if (ops_[q] != PauliOp::I) out.push_back(q);
  return out;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (PauliOp op : ops_) w += op != PauliOp::I;
  return w;
}

bool PauliString::is_diagonal() const {
  for (PauliOp op : ops_)
    if (op == PauliOp::X || op == PauliOp::Y) return false;
  return true;
}

std::string PauliString::word() const {
  std::string s;
  s.reserve(ops_.size());
  for (PauliOp op : ops_) s.push_back(to_char(op));
  return s;
}

std::uint64_t PauliString::flip_mask() const {
  const std::size_t n = ops_.size();
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (ops_[q] == PauliOp::X || ops_[q] == PauliOp::Y)
      m |= std::uint64_t{1} << (n - 1 - q);
  return m;
}

std::uint64_t PauliString::phase_mask() const {
  const std::size_t n = ops_.size();
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (ops_[q] == PauliOp::Z || ops_[q] == PauliOp::Y)
      m |= std::uint64_t{1} << (n - 1 - q);
  return m;
}

std::size_t PauliString::y_count() const {
  std::size_t c = 0;
  for (PauliOp op : ops_) c += op == PauliOp::Y;
  return c;
}

cplx pauli_phase(const PauliString& p, std::uint64_t x) {
  // Y = i X Z, so P|x> = i^{#Y} (-1)^{popcount(x & phase_mask)} |x ^ flip>.
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx ph = kIPow[p.y_count() % 4];
  if (std::popcount(x & p.phase_mask()) & 1) ph = -ph;
  return ph;
}

Hamiltonian::Hamiltonian(std::size_t n_qubits,
                         std::vector<HamiltonianTerm> terms)
    : n_qubits_(n_qubits) {
  for (auto& t : terms) add(t.coefficient, std::move(t.string));
}

void Hamiltonian::add(double coefficient, PauliString string) {
  if (!std::isfinite(coefficient))
    throw std::invalid_argument("non-finite Hamiltonian coefficient");
  if (n_qubits_ == 0 && terms_.empty()) n_qubits_ = string.size();
  if (string.size() != n_qubits_)
    throw std::invalid_argument(fmt::format(
        "term width {} does not match Hamiltonian width {}", string.size(),
        n_qubits_));
  terms_.push_back({coefficient, std::move(string)});
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Hamiltonian parse_hamiltonian(std::string_view text) {
  Hamiltonian h;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos)
      throw ParseError(line_no, "expected '<coefficient> <pauli word>'");
    const std::string_view coeff_tok = line.substr(0, sep);
    const std::string_view word = trim(line.substr(sep));
    if (word.find_first_of(" \t") != std::string_view::npos)
      throw ParseError(line_no, "trailing tokens after Pauli word");

    if (coeff_tok.find_first_of("ijJ") != std::string_view::npos)
      throw ParseError(line_no,
                       fmt::format("complex coefficient '{}' not allowed "
                                   "(Hamiltonian must be Hermitian)",
                                   coeff_tok));
    double c = 0.0;
    const char* first = coeff_tok.data();
    const char* last = first + coeff_tok.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, c);
    if (ec != std::errc{} || ptr != last || !std::isfinite(c))
      throw ParseError(line_no,
                       fmt::format("malformed coefficient '{}'", coeff_tok));

    for (char ch : word)
      if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
        throw ParseError(line_no,
                         fmt::format("invalid Pauli character '{}'", ch));
    if (width == 0) {
      width = word.size();
    } else if (word.size() != width) {
      throw ParseError(line_no,
                       fmt::format("word length {} differs from {}",
                                   word.size(), width));
    }
    h.add(c, PauliString::from_word(word));
  }
  if (h.size() == 0) throw ParseError(0, "empty Hamiltonian");
  return h;
}

Hamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_hamiltonian(ss.str());
}

std::string serialize_hamiltonian(const Hamiltonian& h) {
  std::string out;
  for (const auto& t : h.terms())
    out += fmt::format("{:.17g} {}\n", t.coefficient, t.string.word());
  return out;
}

Hamiltonian transverse_ising_ring(std::size_t n_sites, double coupling,
                                  double field) {
  if (n_sites < 2) throw std::invalid_argument("ring needs at least 2 sites");
  Hamiltonian h(n_sites);
  // Bond order for n = 3: ZZI, IZZ, ZIZ.
  for (std::size_t i = 0; i < n_sites; ++i) {
    const std::size_t j = (i + 1) % n_sites;
    if (n_sites == 2 && i == 1) break;
    PauliString p(n_sites);
    p[i] = PauliOp::Z;
    p[j] = PauliOp::Z;
    h.add(coupling, std::move(p));
  }
  for (std::size_t i = 0; i < n_sites; ++i) {
    PauliString p(n_sites);
    p[i] = PauliOp::X;
    h.add(-field, std::move(p));
  }
  return h;
}

namespace {

void check_dense_limit(std::size_t n, unsigned limit) {
  if (n > limit)
    throw ConfigError(fmt::format(
        "{} qubits exceeds the dense-matrix limit of {}", n, limit));
}

void accumulate(Eigen::MatrixXcd& m, const PauliString& p, cplx scale) {
  const std::uint64_t dim = std::uint64_t{1} << p.size();
  const std::uint64_t flip = p.flip_mask();
  for (std::uint64_t x = 0; x < dim; ++x)
    m(static_cast<Eigen::Index>(x ^ flip), static_cast<Eigen::Index>(x)) +=
        scale * pauli_phase(p, x);
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliString& p, unsigned dense_limit) {
  check_dense_limit(p.size(), dense_limit);
  const auto dim = Eigen::Index{1} << p.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  accumulate(m, p, 1.0);
  return m;
}

Eigen::MatrixXcd dense_matrix(const Hamiltonian& h, unsigned dense_limit) {
  check_dense_limit(h.n_qubits(), dense_limit);
  const auto dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) accumulate(m, t.string, t.coefficient);
  return m;
}

Eigen::Matrix2cd hx_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  m << r, r, r, -r;
  return m;
}

Eigen::Matrix2cd hy_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  m << cplx(0, -r), cplx(0, r), r, r;
  return m;
}

Eigen::Matrix2cd hy_dag_matrix() { return hy_matrix().adjoint(); }

BasisRotationLayer basis_rotation_layer(const PauliString& p) {
  BasisRotationLayer layer;
  layer.diagonalized = PauliString(p.size());
  for (std::size_t q = 0; q < p.size(); ++q) {
    switch (p[q]) {
      case PauliOp::I:
        break;
      case PauliOp::Z:
        layer.diagonalized[q] = PauliOp::Z;
        break;
      case PauliOp::X:
        layer.diagonalized[q] = PauliOp::Z;
        layer.pre_gates.push_back({RotationKind::Hx, q});
        layer.post_gates.push_back({RotationKind::Hx, q});
        break;
      case PauliOp::Y:
        layer.diagonalized[q] = PauliOp::Z;
        layer.pre_gates.push_back({RotationKind::HyDag, q});
        layer.post_gates.push_back({RotationKind::Hy, q});
        break;
    }
  }
  return layer;
}

Eigen::MatrixXcd rotation_matrix(const std::vector<BasisRotation>& gates,
                                 std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : gates) {
    Eigen::Matrix2cd g2 = g.kind == RotationKind::Hx   ? hx_matrix()
                          : g.kind == RotationKind::Hy ? hy_matrix()
                                                       : hy_dag_matrix();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t q = 0; q < n_qubits; ++q) {
      Eigen::Matrix2cd f =
          q == g.qubit ? g2 : Eigen::Matrix2cd(Eigen::Matrix2cd::Identity());
      Eigen::MatrixXcd next(full.rows() * 2, full.cols() * 2);
      for (Eigen::Index r = 0; r < full.rows(); ++r)
        for (Eigen::Index c = 0; c < full.cols(); ++c)
          next.block(2 * r, 2 * c, 2, 2) = full(r, c) * f;
      full = std::move(next);
    }
    u = full * u;
  }
  return u;
}

}  // namespace qite
