// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabsim/compress.hpp"
#include "stabsim/compute.hpp"
#include "stabsim/dense.hpp"
#include "stabsim/errors.hpp"
#include "stabsim/estimate.hpp"
#include "stabsim/pipeline.hpp"
#include "stabsim/rawestim.hpp"

using json = nlohmann::json;
using namespace stabsim;

namespace {

enum Exit { kOk = 0, kParse = 2, kInfeasible = 3, kInvariant = 4 };

struct Common {
  std::string input;
  std::string output;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw std::runtime_error("cannot write " + c.output);
  f << text << "\n";
}

void emit(const Common& c, const json& j) { emit(c, j.dump(2)); }

double now_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json compress_json(const CompressResult& cr) {
  const CompressedTask& t = cr.task;
  json bits = json::array();
  for (std::size_t i = 0; i < t.J.size(); ++i) bits.push_back({{"qubit", t.J[i]}, {"value", t.forced[i]}});
  std::size_t hcount = t.W.h_count();
  json j = {{"v", t.v},
            {"r", t.r},
            {"t_prime", t.t_prime},
            {"r_prime", t.r_prime},
            {"xi_prime", t.xi},
            {"deterministic_bits", bits},
            {"consistent", cr.kind != CompressResult::Kind::DeterministicZero},
            {"gate_count_W", t.W.gates.size()},
            {"hadamards_W", hcount}};
  if (cr.kind == CompressResult::Kind::Task) {
    j["kind"] = "task";
  } else {
    j["kind"] = cr.kind == CompressResult::Kind::ExactValue ? "exact" : "zero";
    j["p"] = cr.value;
  }
  if (cr.violated_j >= 0)
    j["violated"] = {{"qubit", cr.violated_j}, {"forced", cr.violated_bit}, {"requested", 1 - cr.violated_bit}};
  return j;
}

json compute_json(const ComputeResult& r) {
  return {{"p", r.p}, {"t_prime", r.t_prime}, {"r_prime", r.r_prime}, {"terms", r.terms}, {"seconds", r.seconds}};
}

json estimate_json(const EstimateResult& r, double eps, double delta) {
  json trace = json::array();
  for (const auto& rd : r.trace) {
    trace.push_back({{"k", rd.k},
                     {"delta_k", rd.delta_k},
                     {"budget", rd.budget},
                     {"eta", rd.eta},
                     {"s", rd.s},
                     {"L", rd.L},
                     {"eps_star", std::isfinite(rd.eps_star) ? json(rd.eps_star) : json(nullptr)},
                     {"p_hat", rd.p_hat},
                     {"p_star", rd.p_star}});
  }
  return {{"p_hat", r.p_hat},
          {"eps_tot", eps},
          {"delta_tot", delta},
          {"rounds", r.trace.size()},
          {"trace", trace},
          {"cost_model_units", r.cost},
          {"seconds", r.seconds}};
}

// Compressed form of the input, or a ComputeResult-shaped answer when Compress settles it.
ComputeResult trivial_compute(const CompressResult& cr) {
  ComputeResult r;
  r.p = cr.value;
  r.r_prime = cr.task.r_prime;
  return r;
}

std::vector<double> grid(double lo, double hi, std::size_t steps) {
  std::vector<double> g;
  if (steps == 1) return {lo};
  for (std::size_t i = 0; i < steps; ++i) g.push_back(lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Born-rule probabilities of Clifford+T circuits"};
  app.require_subcommand(1);
  Common c;

  auto add_input = [&](CLI::App* s) {
    s->add_option("file", c.input, "circuit file")->required()->check(CLI::ExistingFile);
    s->add_option("-o,--out", c.output, "write output here instead of stdout");
  };
  auto add_threads = [&](CLI::App* s) { s->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(0u, 1024u)); };

  auto* s_compress = app.add_subcommand("compress", "constrain and reduce the T-count");
  add_input(s_compress);

  std::size_t cap = 50;
  auto* s_compute = app.add_subcommand("compute", "exact probability by summation");
  add_input(s_compute);
  add_threads(s_compute);
  s_compute->add_option("--cap", cap, "refuse above this t'-r'")->check(CLI::Range(0, 62));

  std::uint64_t s_samples = 0, s_L = 1;
  auto* s_raw = app.add_subcommand("rawestim", "one fixed-size sampling run");
  add_input(s_raw);
  add_threads(s_raw);
  s_raw->add_option("--s", s_samples, "samples")->required()->check(CLI::PositiveNumber);
  s_raw->add_option("--L", s_L, "equatorial states")->required()->check(CLI::PositiveNumber);
  s_raw->add_option("--seed", c.seed, "master seed");

  double eps = 0.05, delta = 1e-3, c1 = 1.0, c2 = 1.0;
  auto* s_est = app.add_subcommand("estimate", "adaptive estimate with an additive error guarantee");
  add_input(s_est);
  add_threads(s_est);
  s_est->add_option("--eps", eps, "additive error")->check(CLI::Range(1e-9, 1.0));
  s_est->add_option("--delta", delta, "failure probability")->check(CLI::Range(1e-15, 0.999999));
  s_est->add_option("--seed", c.seed, "master seed");
  s_est->add_option("--c1", c1, "cost per t'^3")->check(CLI::PositiveNumber);
  s_est->add_option("--c2", c2, "cost per r'^3")->check(CLI::PositiveNumber);

  double p_assumed = 1.0, delta_ub = 0.05;
  auto* s_rt = app.add_subcommand("runtime", "upper bound on the estimate cost");
  add_input(s_rt);
  s_rt->add_option("--p", p_assumed, "assumed probability")->check(CLI::Range(0.0, 1.0));
  s_rt->add_option("--delta-ub", delta_ub, "failure probability of the bound")->check(CLI::Range(1e-15, 0.999999));
  s_rt->add_option("--eps", eps, "additive error")->check(CLI::Range(1e-9, 1.0));
  s_rt->add_option("--delta", delta, "failure probability")->check(CLI::Range(1e-15, 0.999999));
  s_rt->add_option("--c1", c1, "cost per t'^3")->check(CLI::PositiveNumber);
  s_rt->add_option("--c2", c2, "cost per r'^3")->check(CLI::PositiveNumber);

  auto* s_run = app.add_subcommand("run", "compress, then compute or estimate, whichever is cheaper");
  add_input(s_run);
  add_threads(s_run);
  s_run->add_option("--cap", cap, "compute t'-r' cap")->check(CLI::Range(0, 62));
  s_run->add_option("--eps", eps, "additive error")->check(CLI::Range(1e-9, 1.0));
  s_run->add_option("--delta", delta, "failure probability")->check(CLI::Range(1e-15, 0.999999));
  s_run->add_option("--seed", c.seed, "master seed");
  s_run->add_option("--c1", c1, "cost per t'^3")->check(CLI::PositiveNumber);
  s_run->add_option("--c2", c2, "cost per r'^3")->check(CLI::PositiveNumber);

  auto* s_oracle = app.add_subcommand("oracle", "dense statevector probability (n <= 24)");
  add_input(s_oracle);

  std::size_t n = 40, ccz = 8, diag = 200, reps = 1;
  auto* s_hs = app.add_subcommand("bench-hiddenshift", "hidden-shift recovery benchmark");
  s_hs->add_option("--n", n, "qubits (even)");
  s_hs->add_option("--ccz", ccz, "CCZ gates (even)");
  s_hs->add_option("--diag", diag, "diagonal Cliffords per CCZ");
  s_hs->add_option("--reps", reps, "instances");
  s_hs->add_option("--seed", c.seed, "first instance seed");
  s_hs->add_option("-o,--out", c.output, "output file");
  add_threads(s_hs);

  std::size_t qn = 10, degree = 4, bsteps = 7, gsteps = 7;
  double bmin = 0, bmax = std::numbers::pi / 2, gmin = 0, gmax = std::numbers::pi / 2;
  auto* s_qaoa = app.add_subcommand("bench-qaoa", "Max-E3LIN2 energy sweep, CSV output");
  s_qaoa->add_option("--n", qn, "qubits");
  s_qaoa->add_option("--degree", degree, "terms per qubit");
  s_qaoa->add_option("--seed", c.seed, "instance seed");
  s_qaoa->add_option("--beta-min", bmin);
  s_qaoa->add_option("--beta-max", bmax);
  s_qaoa->add_option("--beta-steps", bsteps)->check(CLI::PositiveNumber);
  s_qaoa->add_option("--gamma-min", gmin);
  s_qaoa->add_option("--gamma-max", gmax);
  s_qaoa->add_option("--gamma-steps", gsteps)->check(CLI::PositiveNumber);
  s_qaoa->add_option("-o,--out", c.output, "output file");
  add_threads(s_qaoa);

  std::size_t ct = 20, cr = 8, creps = 200;
  auto* s_cal = app.add_subcommand("calibrate", "time one sample and one inner product");
  s_cal->add_option("--t", ct, "t'")->check(CLI::Range(1, 64));
  s_cal->add_option("--r", cr, "r'")->check(CLI::Range(1, 64));
  s_cal->add_option("--reps", creps, "repetitions")->check(CLI::PositiveNumber);
  s_cal->add_option("--seed", c.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (s_compress->parsed()) {
      emit(c, compress_json(compress(load_circuit_file(c.input))));
    } else if (s_compute->parsed()) {
      CompressResult r = compress(load_circuit_file(c.input));
      ComputeOptions co;
      co.cap = cap;
      co.threads = c.threads;
      emit(c, compute_json(r.kind == CompressResult::Kind::Task ? compute_probability(r.task, co) : trivial_compute(r)));
    } else if (s_raw->parsed()) {
      CompressResult r = compress(load_circuit_file(c.input));
      json j;
      if (r.kind != CompressResult::Kind::Task) {
        j = {{"p_hat", r.value}, {"s", 0}, {"L", 0}, {"xi_prime", 1.0}, {"seconds", 0.0}};
      } else {
        RawEstimOptions ro;
        ro.threads = c.threads;
        RawEstimResult res = raw_estim(r.task, s_samples, s_L, c.seed, ro);
        j = {{"p_hat", res.p_hat}, {"s", res.s}, {"L", res.L}, {"xi_prime", res.xi_prime}, {"seconds", res.seconds}};
      }
      emit(c, j);
    } else if (s_est->parsed()) {
      CompressResult r = compress(load_circuit_file(c.input));
      if (r.kind != CompressResult::Kind::Task) {
        emit(c, json{{"p_hat", r.value}, {"eps_tot", eps}, {"delta_tot", delta}, {"rounds", 0},
                     {"trace", json::array()}, {"cost_model_units", 0.0}, {"seconds", 0.0}});
      } else {
        EstimateOptions eo;
        eo.eps_tot = eps;
        eo.delta_tot = delta;
        eo.seed = c.seed;
        eo.c1 = c1;
        eo.c2 = c2;
        eo.raw.threads = c.threads;
        emit(c, estimate_json(estimate(r.task, eo), eps, delta));
      }
    } else if (s_rt->parsed()) {
      CompressResult r = compress(load_circuit_file(c.input));
      if (r.kind != CompressResult::Kind::Task) {
        emit(c, json{{"c_ub_model_units", 0.0}, {"k_ub", 0}});
      } else {
        RuntimeBound b = runtime_upper_bound(r.task, p_assumed, delta_ub, eps, delta, c1, c2);
        emit(c, json{{"c_ub_model_units", b.c_ub}, {"k_ub", b.k_ub}, {"t0", b.t0}});
      }
    } else if (s_run->parsed()) {
      DispatchOptions d;
      d.cap = cap;
      d.threads = c.threads;
      d.eps_tot = eps;
      d.delta_tot = delta;
      d.seed = c.seed;
      d.c1 = c1;
      d.c2 = c2;
      DispatchResult res = dispatch(load_circuit_file(c.input), d);
      json j = {{"path", path_name(res.choice.path)}, {"p", res.p}, {"compress", compress_json(res.compressed)}};
      if (res.choice.path != Path::CompressOnly) {
        j["compute_cost_model_units"] = res.choice.compute_cost;
        j["estimate_cost_model_units"] =
            std::isfinite(res.choice.estimate_cost) ? json(res.choice.estimate_cost) : json(nullptr);
      }
      if (res.compute) j["compute"] = compute_json(*res.compute);
      if (res.estimate) j["estimate"] = estimate_json(*res.estimate, eps, delta);
      emit(c, j);
    } else if (s_oracle->parsed()) {
      BornTask t = load_circuit_file(c.input);
      if (t.circuit.n > 24) throw InfeasibleError("oracle: more than 24 qubits", std::ldexp(1.0, static_cast<int>(t.circuit.n)));
      const auto t0 = std::chrono::steady_clock::now();
      double p = born_probability(t);
      emit(c, json{{"p", p}, {"t_prime", t.circuit.t_count()}, {"r_prime", 0},
                   {"terms", std::uint64_t{1} << t.circuit.n}, {"seconds", now_since(t0)}});
    } else if (s_hs->parsed()) {
      HiddenShiftReport rep = bench_hidden_shift(n, ccz, diag, reps, c.seed, c.threads);
      json runs = json::array();
      for (const auto& r : rep.runs)
        runs.push_back({{"seed", r.seed}, {"seconds", r.seconds}, {"recovered", r.recovered},
                        {"t_prime_sum", r.t_prime_sum}, {"by_compress", r.by_compress}, {"t_primes", r.t_primes}});
      json hist = json::object();
      for (auto [k, v] : rep.t_prime_histogram) hist[std::to_string(k)] = v;
      emit(c, json{{"runs", runs}, {"t_prime_histogram", hist}});
    } else if (s_qaoa->parsed()) {
      QaoaInstance inst = random_qaoa_instance(qn, degree, c.seed);
      auto pts = bench_qaoa(inst, grid(bmin, bmax, bsteps), grid(gmin, gmax, gsteps), c.threads);
      std::string csv = "beta,gamma,E,seconds,t_prime_sum\n";
      char buf[160];
      for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.6f,%zu\n", p.beta, p.gamma, p.energy, p.seconds,
                      p.t_prime_sum);
        csv += buf;
      }
      csv.pop_back();
      emit(c, csv);
    } else if (s_cal->parsed()) {
      Calibration cal = calibrate(ct, cr, creps, c.seed);
      emit(c, json{{"t_prime", cal.t}, {"r_prime", cal.r}, {"seconds_per_sample", cal.seconds_per_sample},
                   {"seconds_per_inner_product", cal.seconds_per_inner_product}, {"c1", cal.c1}, {"c2", cal.c2}});
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InfeasibleError& e) {
    std::cerr << json{{"error", "infeasible"}, {"message", e.what()}, {"predicted_cost", e.predicted_cost()}}.dump()
              << "\n";
    return kInfeasible;
  } catch (const InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
