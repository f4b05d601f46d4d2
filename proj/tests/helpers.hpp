// Shared helpers for the unit and acceptance tests.
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "stabsim/chform.hpp"
#include "stabsim/circuit.hpp"
#include "stabsim/dense.hpp"

namespace testutil {

using stabsim::cplx;

inline stabsim::Gate random_clifford_gate(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> q(0, static_cast<std::uint32_t>(n - 1));
  std::uint32_t a = q(rng), b = q(rng);
  while (n > 1 && b == a) b = q(rng);
  switch (rng() % (n > 1 ? 4 : 2)) {
    case 0: return stabsim::Gate::h(a);
    case 1: return stabsim::Gate::s(a);
    case 2: return stabsim::Gate::cx(a, b);
    default: return stabsim::Gate::cz(a, b);
  }
}

inline stabsim::PauliOperator random_hermitian_pauli(std::size_t n, std::mt19937_64& rng) {
  stabsim::PauliOperator p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.set_x(q, rng() & 1);
    p.set_z(q, rng() & 1);
  }
  p.phase = static_cast<unsigned>((p.y_count() + 2 * (rng() & 1)) & 3);
  return p;
}

inline double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? m : 1e300;
}

// (|0><0| (x) I) on the dense vector for qubit j.
inline void dense_project_zero(stabsim::DenseState& st, std::size_t j) {
  for (std::size_t i = 0; i < st.amps().size(); ++i)
    if ((i >> j) & 1) st.amps()[i] = 0.0;
}

inline void dense_one_plus_i_pauli(stabsim::DenseState& st, const stabsim::PauliOperator& p) {
  stabsim::DenseState q = st;
  q.apply_pauli(p);
  const cplx f = std::polar(1.0, -M_PI / 4) / std::sqrt(2.0);
  for (std::size_t i = 0; i < st.amps().size(); ++i)
    st.amps()[i] = f * (st.amps()[i] + cplx(0, 1) * q.amps()[i]);
}

inline void dense_project_pauli(stabsim::DenseState& st, const stabsim::PauliOperator& p) {
  stabsim::DenseState q = st;
  q.apply_pauli(p);
  for (std::size_t i = 0; i < st.amps().size(); ++i) st.amps()[i] = 0.5 * (st.amps()[i] + q.amps()[i]);
}

// One randomized trajectory: Clifford gates interleaved with (I+iP), Pauli projections
// and a final prefix projection + discard. Returns the worst amplitude deviation.
inline double ch_trajectory_deviation(std::size_t n, std::size_t steps, std::mt19937_64& rng) {
  stabsim::CHForm ch(n);
  stabsim::DenseState st(n);
  double worst = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto roll = rng() % 20;
    if (roll == 0) {
      auto p = random_hermitian_pauli(n, rng);
      ch.apply_one_plus_i_pauli(p);
      dense_one_plus_i_pauli(st, p);
    } else if (roll == 1 && (rng() & 3) == 0) {
      auto p = random_hermitian_pauli(n, rng);
      ch.project_pauli(p);
      dense_project_pauli(st, p);
    } else {
      auto g = random_clifford_gate(n, rng);
      ch.apply_left(g);
      st.apply(g);
    }
    worst = std::max(worst, max_diff(ch.statevector(), st.amps()));
  }
  if (n > 1) {
    std::size_t k = 1 + rng() % (n - 1);
    ch.project_zero_prefix(k);
    for (std::size_t j = 0; j < k; ++j) dense_project_zero(st, j);
    worst = std::max(worst, max_diff(ch.statevector(), st.amps()));
    for (std::size_t j = 0; j < k; ++j) ch.discard_leading_zero_qubit();
    std::vector<cplx> tail(std::size_t{1} << (n - k));
    for (std::size_t i = 0; i < tail.size(); ++i) tail[i] = st.amps()[i << k];
    worst = std::max(worst, max_diff(ch.statevector(), tail));
  }
  return worst;
}

// Max-E3LIN2 energy sum_t d_t/2 <Z_u Z_v Z_w> on the dense QAOA state.
inline double dense_qaoa_energy(const stabsim::QaoaInstance& inst, double beta, double gamma) {
  stabsim::DenseState st = stabsim::statevector_simulate(stabsim::qaoa_circuit(inst, beta, gamma));
  const auto& a = st.amps();
  double e = 0;
  for (const auto& t : inst.terms) {
    const std::size_t m = (std::size_t{1} << t.u) | (std::size_t{1} << t.v) | (std::size_t{1} << t.w);
    double z = 0;
    for (std::size_t i = 0; i < a.size(); ++i) z += (std::popcount(i & m) & 1 ? -1.0 : 1.0) * std::norm(a[i]);
    e += 0.5 * t.d * z;
  }
  return e;
}

}  // namespace testutil
