// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabsim/compress.hpp"
#include "stabsim/rawestim.hpp"

namespace stabsim {

struct CostModel {
  double c1 = 1.0, c2 = 1.0;
  double t = 0.0, r = 0.0;  // t', r' of the task

  static CostModel for_task(const CompressedTask& task, double c1 = 1.0, double c2 = 1.0);
  double tau(double s, double L) const { return c1 * s * t * t * t + c2 * s * L * r * r * r; }
};

double delta_prime(double p, double eps_tot, double eta, double s, double L, double xi);
std::uint64_t l_min(double delta, double eta);
// The eps with delta_prime(p, eps, eta, s, l_min(delta_targ, eta) + l_plus) = delta_targ.
double epsilon_prime(double p, double delta_targ, double eta, double s, double l_plus, double xi);

// Sample and iteration counts from the two terms of the RawEstim tail bound.
double samples_for(double p, double eps, double delta, double xi);
double iterations_for(double p, double eps, double eps_tot, double delta_rest);

struct OptParamsResult {
  double eta = 0.5;
  std::uint64_t s = 1;
  std::uint64_t l_plus = 1;
  double eps_star = 0.0;
};

// Minimises epsilon_prime under tau(s, l_plus + l_min(delta, eta)) <= budget.
// Throws InfeasibleError when not even one sample fits the budget.
OptParamsResult opt_params(double p, double delta, double budget, const CostModel& model, double xi);

double initial_budget(double eps_tot, double delta_tot, const CostModel& model, double xi);

struct EstimateRound {
  int k = 0;
  double delta_k = 0, budget = 0, eta = 0;
  std::uint64_t s = 0, l_plus = 0, L = 0;
  double eps_star = 0, p_hat = 0, p_star = 0;
  double cost = 0;
};

struct EstimateOptions {
  double eps_tot = 0.05;
  double delta_tot = 1e-3;
  std::uint64_t seed = 0;
  double c1 = 1.0, c2 = 1.0;
  double t0_scale = 1.0;  // multiplies the initial budget; must keep it insufficient
  int max_rounds = 50;
  RawEstimOptions raw;
};

struct EstimateResult {
  double p_hat = 0;
  std::vector<EstimateRound> trace;
  double cost = 0;  // model units
  double t0 = 0;
  double seconds = 0;
};

EstimateResult estimate(const RawEstimator& est, const EstimateOptions& opt);
EstimateResult estimate(const CompressedTask& task, const EstimateOptions& opt);

struct RuntimeBound {
  double c_ub = 0;  // model units
  int k_ub = 0;
  int k_uub = 64;
  double t0 = 0;
};

RuntimeBound runtime_upper_bound(const CompressedTask& task, double p_assumed, double delta_ub, double eps_tot,
                                 double delta_tot, double c1 = 1.0, double c2 = 1.0, int k_uub = 64);
RuntimeBound runtime_upper_bound(const CostModel& model, double xi, double p_assumed, double delta_ub,
                                 double eps_tot, double delta_tot, int k_uub = 64);

// Cheapest single RawEstim call meeting the tail bound at eps_tot/delta_tot for a known p,
// over all (eps, delta) splits.
double informed_lower_bound(const CostModel& model, double xi, double p, double eps_tot, double delta_tot);

}  // namespace stabsim
