// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: stabsim_acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "stabsim/chform.hpp"
#include "stabsim/compress.hpp"
#include "stabsim/compute.hpp"
#include "stabsim/dense.hpp"
#include "stabsim/estimate.hpp"
#include "stabsim/pipeline.hpp"
#include "stabsim/rawestim.hpp"

using namespace stabsim;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double pipeline_probability(const BornTask& task) {
  CompressResult r = compress(task);
  if (r.kind != CompressResult::Kind::Task) return r.value;
  ComputeOptions co;
  co.cap = 62;
  return compute_probability(r.task, co).p;
}

BornTask random_task(std::size_t n, std::size_t c, std::size_t t, std::size_t w, std::mt19937_64& rng) {
  BornTask task;
  task.circuit = random_clifford_t_circuit(n, c, t, rng());
  task.circuit.w = w;
  for (std::size_t i = 0; i < w; ++i) task.x.push_back(rng() & 1);
  return task;
}

Verdict c1_oracle_equivalence() {
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  double worst = 0;
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 2 + rng() % 11, c = 1 + rng() % 500, t = rng() % (std::min<std::size_t>(c, 10) + 1),
                      w = 1 + rng() % n;
    BornTask task = random_task(n, c, t, w, rng);
    worst = std::max(worst, std::abs(pipeline_probability(task) - born_probability(task)));
  }
  const double sec = since(t0);
  return {worst <= 1e-10 && sec < 120, fmt("500 circuits, max |diff| %.2e, %.1f s", worst, sec)};
}

Verdict c2_rank_concentration() {
  std::mt19937_64 rng(202);
  const std::size_t n = 30, c = 3000, t = 12, w = 6;
  int full = 0, reduced_full = 0;
  std::map<std::size_t, int> deficit;
  for (int it = 0; it < 200; ++it) {
    BornTask task = random_task(n, c, t, w, rng);
    const std::size_t r = constrain_stabilizers(gadgetize(task), task.x).r;
    full += r == std::min(t, n - w);
    ++deficit[std::min(t, n - w) - r];
    // Same question after T-count reduction, reported only.
    CompressResult cr = compress(task);
    reduced_full += cr.kind != CompressResult::Kind::Task || cr.task.t_prime == cr.task.r_prime;
  }
  const double frac = full / 200.0;
  std::string hist;
  for (const auto& [d, cnt] : deficit) hist += fmt(" %zu:%d", d, cnt);
  return {frac > 0.95, fmt("r = min(t, n-w) in %d/200 (%.3f); deficit histogram%s; t'-r' = 0 in %d/200", full, frac,
                           hist.c_str(), reduced_full)};
}

Verdict c3_speed_vs_oracle() {
  std::mt19937_64 rng(303);
  double fast = 0, dense = 0, worst = 0;
  for (int it = 0; it < 3; ++it) {
    BornTask task = random_task(24, 1000, 10, 10, rng);
    auto t0 = Clock::now();
    const double p = pipeline_probability(task);
    fast += since(t0);
    t0 = Clock::now();
    const double q = born_probability(task);
    dense += since(t0);
    worst = std::max(worst, std::abs(p - q));
  }
  const double ratio = dense / fast;
  return {ratio >= 10 && worst <= 1e-10,
          fmt("compress+compute %.3f s, dense %.1f s, ratio %.0f, max |diff| %.1e", fast, dense, ratio, worst)};
}

Verdict c4_hidden_shift() {
  const auto t0 = Clock::now();
  HiddenShiftReport rep = bench_hidden_shift(40, 8, 200, 20, 1);
  bool ok = rep.runs.size() == 20;
  std::size_t bad_sum = 0, bad_bits = 0, bad_mult = 0;
  for (const auto& r : rep.runs) {
    bad_sum += r.t_prime_sum != 96;
    bad_bits += !r.recovered;
    for (std::size_t tp : r.t_primes) bad_mult += tp % 8 != 0;
  }
  const double sec = since(t0);
  ok = ok && bad_sum == 0 && bad_bits == 0 && bad_mult == 0 && sec < 1800;
  std::string hist;
  for (const auto& [tp, cnt] : rep.t_prime_histogram) hist += fmt(" %zu:%zu", tp, cnt);
  return {ok, fmt("20 instances, sum != 96: %zu, unrecovered: %zu, t' not multiple of 8: %zu, t' histogram%s, %.1f s",
                  bad_sum, bad_bits, bad_mult, hist.c_str(), sec)};
}

Verdict c5_qaoa() {
  QaoaInstance small = random_qaoa_instance(10, 4, 505);
  double worst = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const double beta = std::numbers::pi / 2 * i / 6, gamma = std::numbers::pi * j / 6;
      worst = std::max(worst, std::abs(qaoa_energy(small, beta, gamma).energy -
                                       testutil::dense_qaoa_energy(small, beta, gamma)));
    }
  QaoaInstance big = random_qaoa_instance(50, 4, 506);
  std::vector<double> gammas;
  for (int j = 0; j < 31; ++j) gammas.push_back(std::numbers::pi * j / 30);
  const auto t0 = Clock::now();
  bench_qaoa(big, {std::numbers::pi / 4}, gammas);
  const double sec = since(t0);
  return {worst <= 1e-8 && sec < 60, fmt("n=10 7x7 grid max |diff| %.2e; n=50 31-gamma sweep %.2f s", worst, sec)};
}

Verdict c6_tail_bound() {
  const double eps_tot = 0.1, delta_tot = 0.05, eps = 0.05, delta = 0.025;
  const int reps = 400;
  const double slack = 0.05 + 3 * std::sqrt(0.05 * 0.95 / reps);
  bool ok = true;
  std::string detail;
  for (double p : {0.02, 0.1, 0.25, 0.4, 0.6}) {
    CompressResult cr = compress(planted_probability_task(10, 3, 80, 6, p, 1));
    if (cr.kind != CompressResult::Kind::Task) return {false, "planted task reduced to a constant"};
    const CompressedTask& t = cr.task;
    const double exact = compute_probability(t).p;
    const auto s = static_cast<std::uint64_t>(std::ceil(samples_for(exact, eps, delta, t.xi)));
    const auto L = static_cast<std::uint64_t>(std::ceil(iterations_for(exact, eps, eps_tot, delta_tot - delta)));
    RawEstimator est(t);
    int fails = 0;
    for (int k = 0; k < reps; ++k) fails += std::abs(est.run(s, std::max<std::uint64_t>(L, 1), stream_seed(606, k)).p_hat - exact) >= eps_tot;
    const double rate = static_cast<double>(fails) / reps;
    ok = ok && rate <= slack;
    detail += fmt(" p=%.2f(t'=%zu r'=%zu s=%llu L=%llu) %d/%d;", exact, t.t_prime, t.r_prime,
                  static_cast<unsigned long long>(s), static_cast<unsigned long long>(L), fails, reps);
  }
  return {ok, fmt("failure rate bound %.4f:", slack) + detail};
}

Verdict c7_estimate_coverage() {
  EstimateOptions o;
  o.eps_tot = 0.05;
  o.delta_tot = 1e-3;
  int fails = 0, close = 0, runs = 0;
  const auto t0 = Clock::now();
  for (double p : {0.1, 0.3, 0.5}) {
    CompressResult cr = compress(planted_probability_task(10, 3, 80, 6, p, 2));
    if (cr.kind != CompressResult::Kind::Task) return {false, "planted task reduced to a constant"};
    const double exact = compute_probability(cr.task).p;
    RawEstimator est(cr.task);
    for (int k = 0; k < 100; ++k, ++runs) {
      o.seed = 7000 + static_cast<std::uint64_t>(runs);
      const double err = std::abs(estimate(est, o).p_hat - exact);
      fails += err >= o.eps_tot;
      close += err < 0.2 * o.eps_tot;
    }
  }
  return {fails == 0 && close >= 270,
          fmt("%d runs, failures %d, within 0.2*eps_tot %d, %.1f s", runs, fails, close, since(t0))};
}

Verdict c8_runtime_sandwich() {
  const double eps_tot = 0.05, delta_tot = 1e-3, delta_ub = 0.05;
  EstimateOptions o;
  o.eps_tot = eps_tot;
  o.delta_tot = delta_tot;
  int over = 0, runs = 0;
  double worst_ratio = 0, worst_use = 0;
  std::string detail;
  for (double p : {0.02, 0.035, 0.05, 0.08, 0.12, 0.2, 0.3, 0.4, 0.5}) {
    CompressResult cr = compress(planted_probability_task(14, 4, 100, 14, p, 3));
    if (cr.kind != CompressResult::Kind::Task) return {false, "planted task reduced to a constant"};
    const CompressedTask& t = cr.task;
    const double exact = compute_probability(t).p;
    const double c_ub = runtime_upper_bound(t, exact, delta_ub, eps_tot, delta_tot).c_ub;
    RawEstimator est(t);
    for (int k = 0; k < 20; ++k, ++runs) {
      o.seed = 8000 + static_cast<std::uint64_t>(runs);
      const double cost = estimate(est, o).cost;
      over += cost > c_ub;
      worst_use = std::max(worst_use, cost / c_ub);
    }
    if (exact >= eps_tot - 1e-9) {
      const double ratio = c_ub / informed_lower_bound(CostModel::for_task(t), t.xi, exact, eps_tot, delta_tot);
      worst_ratio = std::max(worst_ratio, ratio);
      detail += fmt(" %.3f:%.0f", exact, ratio);
    }
  }
  return {over == 0 && worst_ratio <= 100,
          fmt("%d runs, cost > C_UB in %d (max cost/C_UB %.6f); C_UB/LB by p:%s", runs, over, worst_use,
              detail.c_str())};
}

Verdict c9_ch_form() {
  std::mt19937_64 rng(909);
  double worst = 0;
  for (int it = 0; it < 1000; ++it) worst = std::max(worst, testutil::ch_trajectory_deviation(1 + rng() % 6, 60, rng));
  double worst_eq = 0;
  for (std::size_t r = 1; r <= 4; ++r) {
    const std::size_t d = std::size_t{1} << r;
    std::vector<cplx> acc(d * d);
    const std::uint64_t size = EquatorialState::family_size(r);
    std::vector<cplx> amp(d);
    for (std::uint64_t i = 0; i < size; ++i) {
      const EquatorialState th = EquatorialState::from_index(r, i);
      for (std::size_t x = 0; x < d; ++x) amp[x] = equatorial_amplitude(th, x);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) acc[a * d + b] += amp[a] * std::conj(amp[b]);
    }
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        worst_eq = std::max(worst_eq, std::abs(acc[a * d + b] * static_cast<double>(d) / static_cast<double>(size) -
                                               (a == b ? 1.0 : 0.0)));
  }
  return {worst <= 1e-9 && worst_eq <= 1e-12,
          fmt("1000 trajectories max deviation %.2e; equatorial average vs identity %.2e", worst, worst_eq)};
}

Verdict c10_extent() {
  const double x = extent(std::numbers::pi / 4);
  const double a = std::sqrt(1 - std::numbers::sqrt2 / 2);
  const double want = (a + a) * (a + a);
  const double g = std::log2(x);
  return {std::abs(x - want) <= 1e-12 && std::abs(g - 0.228) <= 1e-3,
          fmt("extent %.15f, closed form %.15f, log2 %.5f", x, want, g)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> checks = {
      c1_oracle_equivalence, c2_rank_concentration, c3_speed_vs_oracle, c4_hidden_shift, c5_qaoa,
      c6_tail_bound,         c7_estimate_coverage,  c8_runtime_sandwich, c9_ch_form,     c10_extent};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    Verdict v;
    try {
      v = checks[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("criterion %2d: %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
