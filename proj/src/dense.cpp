// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/dense.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stabsim {

DenseState::DenseState(std::size_t n) : n_(n) {
  if (n > kDenseMaxQubits) throw std::invalid_argument("dense oracle: width above " + std::to_string(kDenseMaxQubits));
  amps_.assign(std::size_t{1} << n, cplx(0.0, 0.0));
  amps_[0] = 1.0;
}

void DenseState::apply_phase(std::size_t q, double phi) {
  const cplx ph = std::polar(1.0, phi);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (i & bit) amps_[i] *= ph;
}

void DenseState::apply_x(std::size_t q) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
}

void DenseState::apply(const Gate& g) {
  const std::size_t dim = amps_.size();
  switch (g.kind) {
    case GateKind::H: {
      const std::size_t bit = std::size_t{1} << g.q0;
      const double r = std::numbers::sqrt2 / 2;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cplx a = amps_[i], b = amps_[i | bit];
        amps_[i] = r * (a + b);
        amps_[i | bit] = r * (a - b);
      }
      break;
    }
    case GateKind::S: {
      const std::size_t bit = std::size_t{1} << g.q0;
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) amps_[i] *= cplx(0.0, 1.0);
      break;
    }
    case GateKind::T: apply_phase(g.q0, g.angle); break;
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << g.q0, t = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      break;
    }
    case GateKind::CZ: {
      const std::size_t m = (std::size_t{1} << g.q0) | (std::size_t{1} << g.q1);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & m) == m) amps_[i] = -amps_[i];
      break;
    }
  }
}

void DenseState::apply(const Circuit& c) {
  if (c.n != n_) throw std::invalid_argument("dense oracle: width mismatch");
  for (const auto& g : c.gates) apply(g);
}

void DenseState::apply_pauli(const PauliOperator& p) {
  // i^phase X^x Z^z: Z first, then X.
  std::size_t xm = 0, zm = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    if (p.xbit(q)) xm |= std::size_t{1} << q;
    if (p.zbit(q)) zm |= std::size_t{1} << q;
  }
  static const cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<cplx> out(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    double s = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
    out[i ^ xm] = kI[p.phase & 3] * s * amps_[i];
  }
  amps_.swap(out);
}

double DenseState::norm2() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

DenseState statevector_simulate(const Circuit& c) {
  DenseState st(c.n);
  st.apply(c);
  return st;
}

double born_probability(const Circuit& c, const std::vector<std::uint8_t>& x, std::size_t w) {
  if (x.size() != w || w > c.n) throw std::invalid_argument("born_probability: bad outcome length");
  DenseState st = statevector_simulate(c);
  std::size_t mask = (w == 64) ? ~std::size_t{0} : ((std::size_t{1} << w) - 1);
  std::size_t want = 0;
  for (std::size_t j = 0; j < w; ++j)
    if (x[j]) want |= std::size_t{1} << j;
  double p = 0;
  for (std::size_t i = 0; i < st.amps().size(); ++i)
    if ((i & mask) == want) p += std::norm(st.amps()[i]);
  return p;
}

double born_probability(const BornTask& task) {
  return born_probability(task.circuit, task.x, task.circuit.w);
}

std::vector<cplx> pauli_matrix(const PauliOperator& p) {
  const std::size_t dim = std::size_t{1} << p.n;
  std::vector<cplx> m(dim * dim, 0.0);
  for (std::size_t col = 0; col < dim; ++col) {
    DenseState e(p.n);
    e.amps()[0] = 0.0;
    e.amps()[col] = 1.0;
    e.apply_pauli(p);
    for (std::size_t row = 0; row < dim; ++row) m[row * dim + col] = e.amps()[row];
  }
  return m;
}

std::vector<cplx> circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.n;
  std::vector<cplx> m(dim * dim, 0.0);
  for (std::size_t col = 0; col < dim; ++col) {
    DenseState e(c.n);
    e.amps()[0] = 0.0;
    e.amps()[col] = 1.0;
    e.apply(c);
    for (std::size_t row = 0; row < dim; ++row) m[row * dim + col] = e.amps()[row];
  }
  return m;
}

}  // namespace stabsim
