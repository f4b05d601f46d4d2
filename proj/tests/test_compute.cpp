#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "doctest.h"
#include "stabsim/compress.hpp"
#include "stabsim/compute.hpp"
#include "stabsim/dense.hpp"
#include "stabsim/errors.hpp"
#include "stabsim/pipeline.hpp"

using namespace stabsim;

TEST_CASE("H T H") {
  BornTask t = parse_circuit("qubits 1\nmeasure 1\nH 0\nT 0 0.7853981633974483\nH 0\nout 0\n");
  CompressResult r = compress(t);
  REQUIRE(r.kind == CompressResult::Kind::Task);
  ComputeResult c = compute_probability(r.task);
  CHECK(c.p == doctest::Approx((2 + std::sqrt(2.0)) / 4).epsilon(1e-14));
  CHECK(c.terms == std::uint64_t{1} << (c.t_prime - c.r_prime));
}

TEST_CASE("agrees with the dense oracle on random circuits") {
  std::mt19937_64 rng(1234);
  int tasks = 0;
  for (int it = 0; it < 120; ++it) {
    const std::size_t n = 2 + rng() % 9, w = 1 + rng() % n;
    BornTask task;
    task.circuit = random_clifford_t_circuit(n, 20 + rng() % 150, 1 + rng() % 10, rng());
    task.circuit.w = w;
    for (std::size_t i = 0; i < w; ++i) task.x.push_back(rng() & 1);
    CompressResult r = compress(task);
    const double want = born_probability(task);
    const double got = r.kind == CompressResult::Kind::Task ? compute_probability(r.task).p : r.value;
    tasks += r.kind == CompressResult::Kind::Task;
    CHECK(std::abs(got - want) < 1e-10);
  }
  CHECK(tasks > 30);
}

TEST_CASE("thread count does not change the sum") {
  CompressedTask t = synthetic_task(24, 4);
  // Rows from a random Clifford so that the terms carry signs and mixed letters.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    std::uint32_t a = rng() % 24, b = (a + 1 + rng() % 23) % 24;
    const Gate g[4] = {Gate::cx(a, b), Gate::s(a), Gate::cz(a, b), Gate::h(a)};
    t.W.append(g[i % 4]);
  }
  t.g = GeneratingSet(24);
  GeneratingSet all = evolve_z_generators(t.W);
  for (std::size_t j = 0; j < 20; ++j) t.g.rows.push_back(all.rows[j]);
  ComputeOptions one, three;
  one.threads = 1;
  three.threads = 3;
  const double a = compute_probability(t, one).p, b = compute_probability(t, three).p;
  CHECK(a == b);
}

TEST_CASE("cap refusal carries the predicted cost") {
  CompressedTask t = synthetic_task(30, 2);
  ComputeOptions o;
  o.cap = 20;
  try {
    compute_probability(t, o);
    FAIL("expected a refusal");
  } catch (const InfeasibleError& e) {
    CHECK(e.predicted_cost() == doctest::Approx(std::ldexp(30.0, 28)));
  }
  CHECK(compute_model_cost(t) == doctest::Approx(std::ldexp(30.0, 28)));
}

TEST_CASE("synthetic task has probability one") {
  ComputeResult r = compute_probability(synthetic_task(10, 3));
  CHECK(r.p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(3) == 3);
  setenv("STABSIM_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  unsetenv("STABSIM_THREADS");
  CHECK(resolve_threads(0) == 1);
}
