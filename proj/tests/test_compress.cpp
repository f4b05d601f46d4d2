#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "stabsim/compress.hpp"
#include "stabsim/dense.hpp"

using namespace stabsim;

namespace {

BornTask random_task(std::size_t n, std::size_t c, std::size_t t, std::size_t w, std::mt19937_64& rng) {
  BornTask task;
  task.circuit = random_clifford_t_circuit(n, c, t, rng());
  task.circuit.w = w;
  for (std::size_t i = 0; i < w; ++i) task.x.push_back(rng() & 1);
  return task;
}

// 2^{e} || <0|^k W |T^dag>^{t'} ||^2 evaluated densely.
double dense_reduced_probability(const CompressedTask& ct) {
  DenseState st(ct.t_prime);
  for (std::size_t q = 0; q < ct.t_prime; ++q) {
    st.apply(Gate::h(static_cast<std::uint32_t>(q)));
    st.apply_phase(q, -ct.phases[q]);
  }
  st.apply(ct.W);
  const std::size_t k = ct.t_prime - ct.r_prime;
  for (std::size_t j = 0; j < k; ++j) testutil::dense_project_zero(st, j);
  return std::ldexp(st.norm2(), static_cast<int>(ct.exponent()));
}

// W^dag (|0><0|^k (x) I) W as a dense matrix.
std::vector<cplx> projector_from_w(const Circuit& w, std::size_t n, std::size_t k) {
  const std::size_t d = std::size_t{1} << n;
  auto u = circuit_unitary(w);
  std::vector<cplx> out(d * d, 0.0);
  const std::size_t mask = (std::size_t{1} << k) - 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx s = 0;
      for (std::size_t m = 0; m < d; ++m)
        if ((m & mask) == 0) s += std::conj(u[m * d + i]) * u[m * d + j];
      out[i * d + j] = s;
    }
  return out;
}

std::vector<cplx> projector_from_group(const GeneratingSet& g) {
  const std::size_t d = std::size_t{1} << g.n;
  std::vector<cplx> p(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) p[i * d + i] = 1.0;
  for (const auto& row : g.rows) {
    auto m = pauli_matrix(row);
    std::vector<cplx> next(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const cplx a = p[i * d + k];
        if (a == cplx(0, 0)) continue;
        for (std::size_t j = 0; j < d; ++j)
          next[i * d + j] += a * 0.5 * ((k == j ? 1.0 : 0.0) + m[k * d + j]);
      }
    p = next;
  }
  return p;
}

}  // namespace

TEST_CASE("clifford circuits give the exact value") {
  std::mt19937_64 rng(21);
  int exact = 0;
  for (int it = 0; it < 40; ++it) {
    BornTask t = random_task(6, 40, 0, 3, rng);
    CompressResult r = compress(t);
    REQUIRE(r.kind != CompressResult::Kind::Task);
    const double p = born_probability(t);
    CHECK(r.value == doctest::Approx(p).epsilon(1e-12));
    if (r.kind == CompressResult::Kind::ExactValue) {
      ++exact;
      CHECK(r.value == doctest::Approx(std::ldexp(1.0, static_cast<int>(r.task.v) - 3)));
    }
  }
  CHECK(exact > 0);
}

TEST_CASE("inconsistent forced bits give zero") {
  // H;CX puts qubits 0 and 1 in a Bell pair; outcome 01 is impossible.
  BornTask t = parse_circuit("qubits 3\nmeasure 2\nH 0\nCX 0 1\nT 2 0.5\nout 01\n");
  CompressResult r = compress(t);
  CHECK(r.kind == CompressResult::Kind::DeterministicZero);
  CHECK(r.value == 0.0);
  CHECK(r.violated_j >= 0);
  CHECK(born_probability(t) == doctest::Approx(0.0));

  std::mt19937_64 rng(4);
  int zeros = 0;
  for (int it = 0; it < 200; ++it) {
    BornTask u = random_task(7, 30, 3, 5, rng);
    CompressResult cr = compress(u);
    if (cr.kind != CompressResult::Kind::DeterministicZero) continue;
    ++zeros;
    CHECK(born_probability(u) < 1e-12);
  }
  CHECK(zeros > 0);
}

TEST_CASE("reduced form reproduces the dense probability") {
  std::mt19937_64 rng(77);
  int tasks = 0;
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 2 + rng() % 9, t = 1 + rng() % 6, w = 1 + rng() % n;
    BornTask task = random_task(n, 10 + rng() % 80, t, w, rng);
    CompressResult r = compress(task);
    const double p = born_probability(task);
    if (r.kind != CompressResult::Kind::Task) {
      CHECK(r.value == doctest::Approx(p).epsilon(1e-12));
      continue;
    }
    ++tasks;
    const CompressedTask& ct = r.task;
    CHECK(ct.v <= w);
    CHECK(ct.r <= std::min(t, n - w));
    CHECK(ct.r_prime <= ct.r);
    CHECK(ct.t_prime <= t);
    CHECK(ct.t_prime - ct.r_prime <= t - ct.r);
    CHECK(ct.g.size() == ct.t_prime - ct.r_prime);
    double xi_star = 1.0;
    for (const Gate& g : task.circuit.gates)
      if (g.kind == GateKind::T) xi_star *= extent(g.angle);
    CHECK(ct.xi <= xi_star * (1 + 1e-12));
    CHECK(std::abs(dense_reduced_probability(ct) - p) < 1e-10);
  }
  CHECK(tasks > 30);
}

TEST_CASE("small projector examples") {
  GeneratingSet z(1);
  z.rows = {PauliOperator::parse("Z")};
  CHECK(testutil::max_diff(projector_from_w(gate_sequence(z), 1, 1), projector_from_group(z)) < 1e-12);

  GeneratingSet bell(2);
  bell.rows = {PauliOperator::parse("XX"), PauliOperator::parse("ZZ")};
  CHECK(testutil::max_diff(projector_from_w(gate_sequence(bell), 2, 2), projector_from_group(bell)) < 1e-12);

  GeneratingSet neg(2);
  neg.rows = {PauliOperator::parse("-YY")};
  CHECK(testutil::max_diff(projector_from_w(gate_sequence(neg), 2, 1), projector_from_group(neg)) < 1e-12);
}

TEST_CASE("gate sequence builds the group projector") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 120; ++it) {
    const std::size_t t = 1 + rng() % 6;
    const std::size_t k = 1 + rng() % t;
    Circuit c(t, 0);
    for (int i = 0; i < 30; ++i) c.append(testutil::random_clifford_gate(t, rng));
    GeneratingSet all = evolve_z_generators(c);
    GeneratingSet g(t);
    g.rows.assign(all.rows.begin(), all.rows.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& row : g.rows)
      if (rng() & 1) row.phase = (row.phase + 2) & 3;
    Circuit w = gate_sequence(g);
    CHECK(testutil::max_diff(projector_from_w(w, t, k), projector_from_group(g)) < 1e-12);
    const long tp = static_cast<long>(t), rp = static_cast<long>(t - k);
    CHECK(static_cast<long>(w.gates.size()) <= 2 * (4 + rp) * tp - rp * (17 + 3 * rp) / 2);
    CHECK(w.h_count() <= 2 * k);
    // Each row lands in the group generated by Z_0..Z_{k-1}.
    for (const auto& row : g.rows) {
      PauliOperator p = row;
      for (const Gate& gate : w.gates) {
        if (gate.kind == GateKind::H) conj_h(p, gate.q0);
        if (gate.kind == GateKind::S) conj_s(p, gate.q0);
        if (gate.kind == GateKind::CX) conj_cx(p, gate.q0, gate.q1);
        if (gate.kind == GateKind::CZ) conj_cz(p, gate.q0, gate.q1);
      }
      bool in_group = p.sign() == 1 && p.y_count() == 0;
      for (std::size_t q = 0; q < t; ++q) in_group = in_group && !p.xbit(q) && (q < k || !p.zbit(q));
      CHECK(in_group);
    }
  }
}

TEST_CASE("compressing the reduced circuit again is stable") {
  std::mt19937_64 rng(31);
  int done = 0;
  for (int it = 0; it < 80 && done < 15; ++it) {
    BornTask task = random_task(8, 60, 5, 3, rng);
    CompressResult r = compress(task);
    if (r.kind != CompressResult::Kind::Task) continue;
    const CompressedTask& ct = r.task;
    const std::size_t k = ct.t_prime - ct.r_prime;
    BornTask again;
    again.circuit = Circuit(ct.t_prime, k);
    for (std::uint32_t q = 0; q < ct.t_prime; ++q) {
      again.circuit.append(Gate::h(q));
      again.circuit.append_phase(q, -ct.phases[q]);
    }
    again.circuit.append(ct.W);
    again.x.assign(k, 0);
    CompressResult r2 = compress(again);
    const double p2 = r2.kind == CompressResult::Kind::Task ? dense_reduced_probability(r2.task) : r2.value;
    CHECK(std::ldexp(p2, static_cast<int>(ct.exponent())) ==
          doctest::Approx(born_probability(task)).epsilon(1e-9));
    ++done;
  }
  CHECK(done > 5);
}

TEST_CASE("extent of the T gate") {
  const double a = std::sqrt(1 - std::sqrt(2.0) / 2);
  CHECK(extent(std::numbers::pi / 4) == doctest::Approx((a + a) * (a + a)).epsilon(1e-14));
  CHECK(extent(1e-9) == doctest::Approx(1.0).epsilon(1e-6));
}
