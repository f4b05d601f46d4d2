// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/compress.hpp"

#include <algorithm>
#include <cmath>

#include "stabsim/errors.hpp"

namespace stabsim {

GadgetizedCircuit gadgetize(const BornTask& task) {
  const Circuit& u = task.circuit;
  GadgetizedCircuit gc;
  gc.n = u.n;
  gc.w = u.w;
  gc.t = u.t_count();
  gc.v = Circuit(u.n + gc.t, u.w);
  gc.v.gates.reserve(u.gates.size());
  std::uint32_t next = static_cast<std::uint32_t>(u.n);
  for (const Gate& g : u.gates) {
    if (g.kind == GateKind::T) {
      gc.v.append(Gate::cx(g.q0, next++));
      gc.phases.push_back(g.angle);
    } else {
      gc.v.append(g);
    }
  }
  return gc;
}

namespace {

void erase_rows(GeneratingSet& g, long a, long b) {
  if (a < b) std::swap(a, b);
  if (a >= 0) g.erase_row(static_cast<std::size_t>(a));
  if (b >= 0) g.erase_row(static_cast<std::size_t>(b));
}

std::size_t first_bit(const PauliOperator& p, bool& found) {
  // Order: x-part qubits, then z-part qubits.
  for (std::size_t i = 0; i < p.x.size(); ++i)
    if (p.x[i]) {
      found = true;
      return i * 64 + static_cast<std::size_t>(std::countr_zero(p.x[i]));
    }
  for (std::size_t i = 0; i < p.z.size(); ++i)
    if (p.z[i]) {
      found = true;
      return p.n + i * 64 + static_cast<std::size_t>(std::countr_zero(p.z[i]));
    }
  found = false;
  return 0;
}

bool has_bit(const PauliOperator& p, std::size_t col) {
  return col < p.n ? p.xbit(col) : p.zbit(col - p.n);
}

// Echelon basis of Paulis with phases, so reductions yield actual group elements.
struct PauliBasis {
  std::vector<PauliOperator> rows;
  std::vector<std::size_t> pivots;

  void reduce(PauliOperator& p) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (has_bit(p, pivots[i])) mul_right(p, rows[i]);
  }
  void insert(PauliOperator p) {
    reduce(p);
    bool found = false;
    std::size_t col = first_bit(p, found);
    if (!found) return;
    rows.push_back(std::move(p));
    pivots.push_back(col);
  }
};

void evaluate_a_qubit(GeneratingSet& g, std::size_t j, bool xj) {
  for (auto& row : g.rows) {
    if (!row.zbit(j)) continue;
    if (xj) row.phase = (row.phase + 2) & 3;
    row.set_z(j, false);
  }
}

}  // namespace

ConstrainOutcome constrain_stabilizers(const GadgetizedCircuit& gc, const std::vector<std::uint8_t>& x) {
  if (x.size() != gc.w) throw std::invalid_argument("constrain_stabilizers: outcome length mismatch");
  ConstrainOutcome out;
  out.n = gc.n;
  out.w = gc.w;
  out.t = gc.t;
  GeneratingSet g = evolve_z_generators(gc.v);

  for (std::size_t q = gc.w; q < gc.n; ++q) {
    ZxPivots p = to_zx_form(g, q);
    erase_rows(g, p.xrow, p.zrow);
  }
  for (std::size_t q = 0; q < gc.w; ++q) {
    ZxPivots p = to_zx_form(g, q);
    erase_rows(g, p.xrow, -1);
  }
  out.g_tilde = g;

  for (std::size_t j = 0; j < gc.w; ++j) {
    ZxPivots p = to_zx_form(g, j);
    STABSIM_CHECK(p.xrow < 0, "register-a constraint left an X on a measured qubit");
    if (p.zrow >= 0) {
      const auto zi = static_cast<std::size_t>(p.zrow);
      PauliBasis basis;
      for (std::size_t i = 0; i < g.rows.size(); ++i)
        if (i != zi) basis.insert(g.rows[i]);
      PauliOperator h = g.rows[zi];
      basis.reduce(h);
      h.set_z(j, false);
      if (h.is_identity_mask()) {
        // h = (-1)^a Z_j lies in the group: the outcome on qubit j is forced to a.
        auto a = static_cast<std::uint8_t>((h.phase >> 1) & 1);
        ++out.v;
        out.J.push_back(j);
        out.forced.push_back(a);
        if (a != x[j] && out.consistent) {
          out.consistent = false;
          out.violated_j = static_cast<long>(j);
          out.violated_bit = a;
        }
        g.erase_row(zi);
      }
    }
    evaluate_a_qubit(g, j, x[j] != 0);
  }

  out.g = GeneratingSet(gc.t);
  for (const auto& row : g.rows) {
    PauliOperator c(gc.t);
    for (std::size_t k = 0; k < gc.t; ++k) {
      if (row.xbit(gc.n + k)) c.set_x(k, true);
      if (row.zbit(gc.n + k)) c.set_z(k, true);
    }
    c.phase = row.phase;
    out.g.rows.push_back(std::move(c));
  }
  STABSIM_CHECK(out.g.size() <= gc.t, "constrained set larger than the T-count");
  out.r = gc.t - out.g.size();
  STABSIM_CHECK(out.v <= gc.w, "deterministic number exceeds w");
  STABSIM_CHECK(out.r <= std::min(gc.t, gc.n - gc.w), "projector rank above min(t, n-w)");
  return out;
}

double extent(double phi) {
  double a = std::sqrt(std::max(0.0, 1.0 - std::sin(phi)));
  double b = std::sqrt(std::max(0.0, 1.0 - std::cos(phi)));
  return (a + b) * (a + b);
}

CompressedTask reduce_t_count(const ConstrainOutcome& out, const std::vector<double>& phases) {
  GeneratingSet g = out.g;
  const std::size_t t = g.n;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < t; ++k) {
      bool any_x = false;
      long piv = -1;
      for (std::size_t i = 0; i < g.rows.size(); ++i) {
        if (g.rows[i].xbit(k)) {
          any_x = true;
          break;
        }
        if (piv < 0 && g.rows[i].zbit(k)) piv = static_cast<long>(i);
      }
      if (any_x || piv < 0) continue;
      // Every group element touching qubit k has a Z there and expectation 0.
      const auto pi = static_cast<std::size_t>(piv);
      for (std::size_t i = 0; i < g.rows.size(); ++i)
        if (i != pi && g.rows[i].zbit(k)) mul_right(g.rows[i], g.rows[pi]);
      g.erase_row(pi);
      changed = true;
    }
  }

  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < t; ++k) {
    bool used = false;
    for (const auto& row : g.rows)
      if (row.xbit(k) || row.zbit(k)) {
        used = true;
        break;
      }
    if (used) keep.push_back(k);
  }

  CompressedTask ct;
  ct.n = out.n;
  ct.w = out.w;
  ct.t = out.t;
  ct.v = out.v;
  ct.r = out.r;
  ct.J = out.J;
  ct.forced = out.forced;
  ct.t_prime = keep.size();
  ct.g = GeneratingSet(ct.t_prime);
  for (const auto& row : g.rows) {
    PauliOperator c(ct.t_prime);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (row.xbit(keep[i])) c.set_x(i, true);
      if (row.zbit(keep[i])) c.set_z(i, true);
    }
    c.phase = row.phase;
    ct.g.rows.push_back(std::move(c));
  }
  STABSIM_CHECK(ct.g.size() <= ct.t_prime, "reduced set larger than t'");
  ct.r_prime = ct.t_prime - ct.g.size();
  double xi_star = 1.0;
  for (double phi : phases) xi_star *= extent(phi);
  for (std::size_t k : keep) {
    ct.phases.push_back(phases[k]);
    ct.xi *= extent(phases[k]);
  }
  STABSIM_CHECK(ct.t_prime <= ct.t && ct.r_prime <= ct.r, "T-count reduction increased t or r");
  STABSIM_CHECK(ct.t_prime - ct.r_prime <= ct.t - ct.r, "T-count reduction increased t-r");
  STABSIM_CHECK(ct.xi <= xi_star * (1 + 1e-12), "reduced extent above the original");
  return ct;
}

Circuit gate_sequence(const GeneratingSet& g_in) {
  GeneratingSet g = g_in;
  const std::size_t t = g.n;
  const std::size_t k = g.rows.size();
  Circuit w(t, 0);
  auto apply = [&](const Gate& gate) {
    w.append(gate);
    for (auto& row : g.rows) {
      switch (gate.kind) {
        case GateKind::H: conj_h(row, gate.q0); break;
        case GateKind::S: conj_s(row, gate.q0); break;
        case GateKind::CX: conj_cx(row, gate.q0, gate.q1); break;
        case GateKind::CZ: conj_cz(row, gate.q0, gate.q1); break;
        case GateKind::T: break;
      }
    }
  };

  // Reduced row echelon form of the X block, pulling Z entries over with H.
  std::vector<std::size_t> pivcol;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < t && rank < k; ++col) {
    auto find = [&](bool xpart) -> long {
      for (std::size_t i = rank; i < k; ++i)
        if (xpart ? g.rows[i].xbit(col) : g.rows[i].zbit(col)) return static_cast<long>(i);
      return -1;
    };
    long piv = find(true);
    if (piv < 0) {
      if (find(false) < 0) continue;
      apply(Gate::h(static_cast<std::uint32_t>(col)));
      piv = find(true);
    }
    std::swap(g.rows[rank], g.rows[static_cast<std::size_t>(piv)]);
    for (std::size_t i = 0; i < k; ++i)
      if (i != rank && g.rows[i].xbit(col)) mul_right(g.rows[i], g.rows[rank]);
    pivcol.push_back(col);
    ++rank;
  }
  if (rank != k) throw std::invalid_argument("gate_sequence: dependent generators");
  for (std::size_t i = 0; i < k; ++i) {
    if (pivcol[i] == i) continue;
    auto a = static_cast<std::uint32_t>(i), b = static_cast<std::uint32_t>(pivcol[i]);
    apply(Gate::cx(a, b));
    apply(Gate::cx(b, a));
    apply(Gate::cx(a, b));
  }
  // Clear the trailing X block.
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t col = k; col < t; ++col)
      if (g.rows[j].xbit(col)) apply(Gate::cx(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(col)));
  for (std::size_t j = 0; j < k; ++j)
    if (g.rows[j].zbit(j)) apply(Gate::s(static_cast<std::uint32_t>(j)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t col = k; col < t; ++col)
      if (g.rows[j].zbit(col)) apply(Gate::cz(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(col)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = j + 1; l < k; ++l) {
      if (!g.rows[j].zbit(l)) continue;
      if (!g.rows[l].zbit(j)) throw std::invalid_argument("gate_sequence: generators do not commute");
      apply(Gate::cz(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(l)));
    }
  for (std::size_t j = 0; j < k; ++j) {
    if (g.rows[j].sign() < 0) {
      apply(Gate::s(static_cast<std::uint32_t>(j)));
      apply(Gate::s(static_cast<std::uint32_t>(j)));
    }
  }
  for (std::size_t j = 0; j < k; ++j) apply(Gate::h(static_cast<std::uint32_t>(j)));

  for (std::size_t j = 0; j < k; ++j) {
    PauliOperator want(t);
    want.set_z(j, true);
    if (!(g.rows[j] == want)) throw std::invalid_argument("gate_sequence: input is not a valid stabilizer set");
  }
  return w;
}

CompressResult compress(const BornTask& task) {
  task.circuit.validate();
  if (task.x.size() != task.circuit.w) throw std::invalid_argument("compress: outcome length mismatch");
  GadgetizedCircuit gc = gadgetize(task);
  ConstrainOutcome co = constrain_stabilizers(gc, task.x);
  CompressResult res;
  if (!co.consistent) {
    res.kind = CompressResult::Kind::DeterministicZero;
    res.value = 0.0;
    res.violated_j = co.violated_j;
    res.violated_bit = co.violated_bit;
    res.task.n = co.n;
    res.task.w = co.w;
    res.task.t = co.t;
    res.task.v = co.v;
    res.task.r = co.r;
    res.task.J = co.J;
    res.task.forced = co.forced;
    return res;
  }
  res.task = reduce_t_count(co, gc.phases);
  if (res.task.t_prime == 0) {
    res.kind = CompressResult::Kind::ExactValue;
    res.value = std::ldexp(1.0, static_cast<int>(res.task.v) - static_cast<int>(res.task.w));
    return res;
  }
  res.task.W = gate_sequence(res.task.g);
  res.kind = CompressResult::Kind::Task;
  return res;
}

}  // namespace stabsim
