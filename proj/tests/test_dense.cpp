#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "stabsim/dense.hpp"

using namespace stabsim;

TEST_CASE("H T H outcome probabilities") {
  Circuit c(1, 1);
  c.append(Gate::h(0));
  c.append(Gate::t(0, std::numbers::pi / 4));
  c.append(Gate::h(0));
  CHECK(born_probability(c, {0}, 1) == doctest::Approx((2 + std::sqrt(2.0)) / 4).epsilon(1e-14));
  CHECK(born_probability(c, {1}, 1) == doctest::Approx((2 - std::sqrt(2.0)) / 4).epsilon(1e-14));
}

TEST_CASE("marginals over unmeasured qubits sum to one") {
  std::mt19937_64 rng(1);
  Circuit c = random_clifford_t_circuit(5, 60, 5, 4);
  c.w = 2;
  double total = 0;
  for (std::uint8_t a = 0; a < 2; ++a)
    for (std::uint8_t b = 0; b < 2; ++b) total += born_probability(c, {a, b}, 2);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(statevector_simulate(c).norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("circuit unitary is unitary and matches the simulator") {
  Circuit c = random_clifford_t_circuit(3, 25, 3, 7);
  auto u = circuit_unitary(c);
  const std::size_t d = 8;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx s = 0;
      for (std::size_t k = 0; k < d; ++k) s += std::conj(u[k * d + i]) * u[k * d + j];
      CHECK(std::abs(s - cplx(i == j ? 1.0 : 0.0, 0)) < 1e-12);
    }
  auto st = statevector_simulate(c).amps();
  for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(st[i] - u[i * d]) < 1e-12);
}

TEST_CASE("too many qubits is refused") { CHECK_THROWS(DenseState(kDenseMaxQubits + 1)); }
