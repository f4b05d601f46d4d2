// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "stabsim/circuit.hpp"

namespace stabsim {

namespace {

std::uint32_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

std::pair<std::uint32_t, std::uint32_t> pick_pair(std::mt19937_64& rng, std::size_t n) {
  std::uint32_t a = pick(rng, n);
  std::uint32_t b = pick(rng, n - 1);
  if (b >= a) ++b;
  return {a, b};
}

void append_inverse(Circuit& out, const Circuit& c) {
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    const Gate& g = *it;
    switch (g.kind) {
      case GateKind::S:
        out.append_phase(g.q0, 3 * std::numbers::pi / 2);
        break;
      case GateKind::T:
        out.append_phase(g.q0, -g.angle);
        break;
      default:
        out.append(g);
    }
  }
}

}  // namespace

Circuit random_clifford_t_circuit(std::size_t n, std::size_t c, std::size_t t, std::uint64_t seed) {
  if (t > c) throw std::invalid_argument("random circuit: t exceeds c");
  if (n < 2) throw std::invalid_argument("random circuit: need n >= 2");
  std::mt19937_64 rng(seed);
  Circuit out(n, 0);
  out.gates.reserve(c);
  for (std::size_t i = 0; i < c; ++i) {
    switch (pick(rng, 4)) {
      case 0: out.append(Gate::s(pick(rng, n))); break;
      case 1: out.append(Gate::h(pick(rng, n))); break;
      case 2: {
        auto [a, b] = pick_pair(rng, n);
        out.append(Gate::cx(a, b));
        break;
      }
      default: {
        auto [a, b] = pick_pair(rng, n);
        out.append(Gate::cz(a, b));
        break;
      }
    }
  }
  std::vector<std::size_t> idx(c);
  for (std::size_t i = 0; i < c; ++i) idx[i] = i;
  // Partial Fisher-Yates: the first t entries are a uniform t-subset.
  for (std::size_t i = 0; i < t; ++i) {
    std::size_t j = i + std::uniform_int_distribution<std::size_t>(0, c - i - 1)(rng);
    std::swap(idx[i], idx[j]);
    Gate& g = out.gates[idx[i]];
    g = Gate::t(g.q0, std::numbers::pi / 4);
  }
  return out;
}

HiddenShiftInstance hidden_shift_circuit(std::size_t n, std::size_t ccz_count, std::size_t diag_per_ccz,
                                         std::uint64_t seed) {
  if (n % 2 != 0 || n == 0) throw std::invalid_argument("hidden shift: n must be even and positive");
  if (ccz_count % 2 != 0) throw std::invalid_argument("hidden shift: ccz_count must be even");
  const std::size_t m = n / 2;
  if (ccz_count > 0 && m < 3) throw std::invalid_argument("hidden shift: CCZ needs n >= 6");
  std::mt19937_64 rng(seed);

  HiddenShiftInstance inst;
  inst.n = n;
  inst.shift.resize(n);
  for (auto& b : inst.shift) b = static_cast<std::uint8_t>(pick(rng, 2));

  // f(x, y) = g(x) + sum_i x_i y_{pi(i)}; the dual is g(y o pi) + sum_i a_i b_{pi(i)}.
  // Register x is qubits 0..m-1 and register y is m..n-1.
  std::vector<std::uint32_t> pi(m);
  for (std::size_t i = 0; i < m; ++i) pi[i] = static_cast<std::uint32_t>(i);
  std::shuffle(pi.begin(), pi.end(), rng);

  Circuit g(m, 0);
  for (std::size_t k = 0; k < ccz_count / 2; ++k) {
    for (std::size_t d = 0; d < diag_per_ccz; ++d) {
      if (m >= 2 && pick(rng, 2)) {
        auto [a, b] = pick_pair(rng, m);
        g.append(Gate::cz(a, b));
      } else {
        std::uint32_t q = pick(rng, m);
        g.append(Gate::s(q));
        g.append(Gate::s(q));
      }
    }
    std::vector<std::uint32_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = static_cast<std::uint32_t>(i);
    std::shuffle(all.begin(), all.end(), rng);
    g.append_ccz(all[0], all[1], all[2]);
  }

  std::vector<std::uint32_t> to_x(m), to_y(m);
  for (std::size_t i = 0; i < m; ++i) {
    to_x[i] = static_cast<std::uint32_t>(i);
    to_y[i] = static_cast<std::uint32_t>(m + pi[i]);
  }
  Circuit gx = permute_qubits(g, to_x);
  Circuit gy = permute_qubits(g, to_y);
  gx.n = gy.n = n;

  Circuit c(n, 0);
  auto hadamards = [&] {
    for (std::size_t q = 0; q < n; ++q) c.append(Gate::h(static_cast<std::uint32_t>(q)));
  };
  auto pairing = [&] {
    for (std::size_t i = 0; i < m; ++i) c.append(Gate::cz(static_cast<std::uint32_t>(i), to_y[i]));
  };
  auto shift_x = [&] {
    for (std::size_t q = 0; q < n; ++q)
      if (inst.shift[q]) c.append_x(static_cast<std::uint32_t>(q));
  };

  hadamards();
  shift_x();
  c.append(gx);
  pairing();
  shift_x();
  hadamards();
  c.append(gy);
  pairing();
  hadamards();
  inst.circuit = c;

  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t q = 0; q < n; ++q) perm[q] = static_cast<std::uint32_t>(q);
    std::swap(perm[0], perm[j]);
    BornTask task;
    task.circuit = permute_qubits(c, perm);
    task.circuit.w = 1;
    task.x = {1};
    inst.tasks.push_back(std::move(task));
  }
  return inst;
}

void validate_qaoa_instance(const QaoaInstance& inst) {
  std::vector<std::size_t> deg(inst.n, 0);
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
  for (const auto& t : inst.terms) {
    if (!(t.u < t.v && t.v < t.w && t.w < inst.n)) throw std::invalid_argument("qaoa: term indices must satisfy u<v<w<n");
    if (t.d != 1 && t.d != -1) throw std::invalid_argument("qaoa: coefficient must be +-1");
    if (!seen.insert({t.u, t.v, t.w}).second) throw std::invalid_argument("qaoa: repeated term");
    ++deg[t.u];
    ++deg[t.v];
    ++deg[t.w];
  }
  for (auto d : deg)
    if (d > inst.degree) throw std::invalid_argument("qaoa: degree bound violated");
}

QaoaInstance random_qaoa_instance(std::size_t n, std::size_t degree, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("qaoa: need n >= 3");
  std::mt19937_64 rng(seed);
  const std::size_t m = n * degree / 3;
  const std::size_t spare = n * degree - 3 * m;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    // One qubit (the last in shuffled order) gives up the slots that do not fit.
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::uint32_t> slots;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = degree - (i + 1 == n ? spare : 0);
      for (std::size_t j = 0; j < k; ++j) slots.push_back(order[i]);
    }
    std::shuffle(slots.begin(), slots.end(), rng);
    QaoaInstance inst{n, degree, {}};
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      std::uint32_t a[3] = {slots[3 * k], slots[3 * k + 1], slots[3 * k + 2]};
      std::sort(a, a + 3);
      if (a[0] == a[1] || a[1] == a[2] || !seen.insert({a[0], a[1], a[2]}).second) ok = false;
      inst.terms.push_back({a[0], a[1], a[2], pick(rng, 2) ? 1 : -1});
    }
    if (ok) return inst;
  }
  throw std::runtime_error("qaoa: could not build instance");
}

Circuit qaoa_circuit(const QaoaInstance& inst, double beta, double gamma) {
  validate_qaoa_instance(inst);
  Circuit c(inst.n, 0);
  for (std::size_t q = 0; q < inst.n; ++q) c.append(Gate::h(static_cast<std::uint32_t>(q)));
  for (const auto& t : inst.terms) {
    // exp(-i gamma d/2 ZZZ): parity onto w, phase diag(1, e^{i gamma d}), undo.
    c.append(Gate::cx(t.u, t.w));
    c.append(Gate::cx(t.v, t.w));
    c.append_phase(t.w, gamma * t.d);
    c.append(Gate::cx(t.v, t.w));
    c.append(Gate::cx(t.u, t.w));
  }
  for (std::size_t q = 0; q < inst.n; ++q) {
    auto qq = static_cast<std::uint32_t>(q);
    c.append(Gate::h(qq));
    c.append_phase(qq, 2 * beta);
    c.append(Gate::h(qq));
  }
  return c;
}

std::vector<WeightedTask> qaoa_tasks(const QaoaInstance& inst, double beta, double gamma) {
  Circuit base = qaoa_circuit(inst, beta, gamma);
  std::vector<WeightedTask> out;
  out.reserve(inst.terms.size());
  for (const auto& t : inst.terms) {
    PauliOperator p(inst.n);
    p.set_z(t.u, true);
    p.set_z(t.v, true);
    p.set_z(t.w, true);
    auto [red, sign] = pauli_to_z1_circuit(p);
    WeightedTask wt;
    wt.task.circuit = base;
    wt.task.circuit.append(red);
    wt.task.circuit.w = 1;
    wt.task.x = {0};
    wt.weight = 0.5 * t.d * sign;
    out.push_back(std::move(wt));
  }
  return out;
}

std::pair<Circuit, int> pauli_to_z1_circuit(const PauliOperator& p_in) {
  if (p_in.is_identity_mask()) throw std::invalid_argument("pauli_to_z1: identity Pauli");
  if (!p_in.is_hermitian()) throw std::invalid_argument("pauli_to_z1: phase must be +-1");
  PauliOperator p = p_in;
  Circuit c(p.n, 0);
  auto push = [&](const Gate& g) {
    c.append(g);
    switch (g.kind) {
      case GateKind::H: conj_h(p, g.q0); break;
      case GateKind::S: conj_s(p, g.q0); break;
      case GateKind::CX: conj_cx(p, g.q0, g.q1); break;
      default: break;
    }
  };
  for (std::size_t q = 0; q < p.n; ++q) {
    auto qq = static_cast<std::uint32_t>(q);
    if (p.xbit(q) && p.zbit(q)) {
      push(Gate::s(qq));
      push(Gate::h(qq));
    } else if (p.xbit(q)) {
      push(Gate::h(qq));
    }
  }
  if (!p.zbit(0)) {
    std::uint32_t j = 1;
    while (!p.zbit(j)) ++j;
    push(Gate::cx(0, j));
    push(Gate::cx(j, 0));
    push(Gate::cx(0, j));
  }
  for (std::size_t q = 1; q < p.n; ++q)
    if (p.zbit(q)) push(Gate::cx(static_cast<std::uint32_t>(q), 0));
  return {c, p.sign()};
}

double planted_angle(double p, std::size_t w) {
  if (!(p > 0.0 && p <= 1.0) || w == 0) throw std::invalid_argument("planted_angle: need p in (0,1], w >= 1");
  return 2.0 * std::acos(std::pow(p, 1.0 / (2.0 * static_cast<double>(w))));
}

BornTask planted_probability_task(std::size_t n, std::size_t w, std::size_t depth, std::size_t t, double p,
                                  std::uint64_t seed) {
  if (w == 0 || w > n) throw std::invalid_argument("planted task: need 1 <= w <= n");
  double phi = planted_angle(p, w);
  Circuit u = random_clifford_t_circuit(n, depth, t, seed);
  BornTask task;
  task.circuit = Circuit(n, w);
  for (std::size_t q = 0; q < w; ++q) {
    auto qq = static_cast<std::uint32_t>(q);
    task.circuit.append(Gate::h(qq));
    task.circuit.append_phase(qq, phi);
    task.circuit.append(Gate::h(qq));
  }
  append_inverse(task.circuit, u);
  task.circuit.append(u);
  task.x.assign(w, 0);
  return task;
}

}  // namespace stabsim
