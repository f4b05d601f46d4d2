#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "stabsim/dense.hpp"
#include "stabsim/pauli.hpp"

using namespace stabsim;

namespace {
std::vector<cplx> matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t d) {
  std::vector<cplx> c(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) c[i * d + j] += a[i * d + k] * b[k * d + j];
  return c;
}

std::vector<cplx> dagger(const std::vector<cplx>& a, std::size_t d) {
  std::vector<cplx> c(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c[j * d + i] = std::conj(a[i * d + j]);
  return c;
}
}  // namespace

TEST_CASE("parse and print") {
  PauliOperator p = PauliOperator::parse("-XYZ_");
  CHECK(p.n == 4);
  CHECK(p.xbit(0));
  CHECK((p.xbit(1) && p.zbit(1)));
  CHECK(p.zbit(2));
  CHECK(p.sign() == -1);
  CHECK(p.str() == PauliOperator::parse(p.str()).str());
  CHECK_THROWS(PauliOperator::parse("+XQ"));
}

TEST_CASE("single-qubit products") {
  auto X = PauliOperator::parse("X"), Y = PauliOperator::parse("Y"), Z = PauliOperator::parse("Z");
  CHECK(pauli_mul(X, Y) == PauliOperator::parse("iZ"));
  CHECK(pauli_mul(Y, X) == PauliOperator::parse("-iZ"));
  CHECK(pauli_mul(Z, X) == PauliOperator::parse("iY"));
  CHECK(pauli_mul(Y, Y) == PauliOperator::parse("I"));
  CHECK(!commutes(X, Z));
  CHECK(commutes(PauliOperator::parse("XX"), PauliOperator::parse("ZZ")));
}

TEST_CASE("products and conjugation agree with dense matrices") {
  std::mt19937_64 rng(11);
  const std::size_t n = 3, d = 8;
  for (int it = 0; it < 60; ++it) {
    PauliOperator a = testutil::random_hermitian_pauli(n, rng);
    PauliOperator b = testutil::random_hermitian_pauli(n, rng);
    CHECK(testutil::max_diff(pauli_matrix(pauli_mul(a, b)), matmul(pauli_matrix(a), pauli_matrix(b), d)) < 1e-12);

    Gate g = testutil::random_clifford_gate(n, rng);
    Circuit c(n, 0);
    c.append(g);
    auto u = circuit_unitary(c);
    PauliOperator pa = a;
    switch (g.kind) {
      case GateKind::H: conj_h(pa, g.q0); break;
      case GateKind::S: conj_s(pa, g.q0); break;
      case GateKind::CX: conj_cx(pa, g.q0, g.q1); break;
      case GateKind::CZ: conj_cz(pa, g.q0, g.q1); break;
      default: break;
    }
    auto want = matmul(matmul(u, pauli_matrix(a), d), dagger(u, d), d);
    CHECK(testutil::max_diff(pauli_matrix(pa), want) < 1e-12);
  }
}

TEST_CASE("gray code flips one generator per step") {
  for (std::uint64_t j = 1; j < 1024; ++j) {
    std::uint64_t diff = gray_code(j) ^ gray_code(j - 1);
    CHECK(diff == (std::uint64_t{1} << gray_flip_index(j)));
  }
}

TEST_CASE("rank and commutation") {
  GeneratingSet g(3);
  g.rows = {PauliOperator::parse("XXI"), PauliOperator::parse("ZZI"), PauliOperator::parse("YYI")};
  CHECK(gf2_rank(g) == 2);
  CHECK(pairwise_commuting(g));
  g.rows.push_back(PauliOperator::parse("ZII"));
  CHECK(!pairwise_commuting(g));
}

TEST_CASE("magic expectation matches a dense product state") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.05, 1.5);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 3;
    std::vector<double> ph(n);
    DenseState st(n);
    for (std::size_t q = 0; q < n; ++q) {
      ph[q] = ang(rng);
      st.apply(Gate::h(static_cast<std::uint32_t>(q)));
      st.apply_phase(q, -ph[q]);
    }
    PauliOperator p = testutil::random_hermitian_pauli(n, rng);
    DenseState q = st;
    q.apply_pauli(p);
    cplx e = 0;
    for (std::size_t i = 0; i < st.amps().size(); ++i) e += std::conj(st.amps()[i]) * q.amps()[i];
    CHECK(std::abs(e.imag()) < 1e-12);
    CHECK(magic_expectation(p, ph) == doctest::Approx(e.real()).epsilon(1e-12));
  }
}
