// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/estimate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stabsim/errors.hpp"

namespace stabsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kTwoE2 = 2.0 * std::exp(2.0);
// L is free when r' = 0; any large count makes the norm-estimation term vanish.
constexpr std::uint64_t kFreeL = std::uint64_t{1} << 40;

// sqrt(p + c) - sqrt(p) without cancellation.
double root_gap(double p, double c) { return c / (std::sqrt(p + c) + std::sqrt(p)); }

struct Min1D {
  double x = 0, f = kInf;
};

// Coarse scan followed by golden-section refinement around the best grid point.
Min1D minimize_1d(const std::function<double(double)>& f, double lo, double hi, int grid, double tol) {
  Min1D best;
  if (!(hi > lo)) {
    best.x = lo;
    best.f = f(lo);
    return best;
  }
  std::vector<double> xs(static_cast<std::size_t>(grid));
  std::vector<double> fs(xs.size());
  std::size_t bi = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / grid;
    fs[i] = f(xs[i]);
    if (fs[i] < fs[bi]) bi = i;
  }
  best = {xs[bi], fs[bi]};
  double a = bi == 0 ? lo : xs[bi - 1];
  double b = bi + 1 == xs.size() ? hi : xs[bi + 1];
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.f) best = {c, fc};
  if (fd < best.f) best = {d, fd};
  return best;
}

void check_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

}  // namespace

CostModel CostModel::for_task(const CompressedTask& task, double c1, double c2) {
  if (!(c1 > 0 && c2 > 0)) throw std::invalid_argument("cost model constants must be positive");
  CostModel m;
  m.c1 = c1;
  m.c2 = c2;
  m.t = static_cast<double>(task.t_prime);
  m.r = static_cast<double>(task.r_prime);
  return m;
}

double delta_prime(double p, double eps_tot, double eta, double s, double L, double xi) {
  if (!(p >= 0 && p <= 1) || !(eps_tot > 0) || !(eta > 0 && eta < 1) || !(s >= 1) || !(L >= 1))
    throw std::invalid_argument("delta_prime: argument outside its domain");
  const double gap = root_gap(p, eta * eps_tot);
  const double den = std::sqrt(xi) + 1.0;
  const double first = kTwoE2 * std::exp(-s * gap * gap / (2.0 * den * den));
  const double ratio = (1.0 - eta) * eps_tot / (p + eta * eps_tot);
  const double second = std::exp(-ratio * ratio * L);
  return first + second;
}

std::uint64_t l_min(double delta, double eta) {
  check_unit(delta, "delta");
  check_unit(eta, "eta");
  const double q = eta / (1.0 - eta);
  const double v = std::ceil(-q * q * std::log(delta));
  return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
}

double epsilon_prime(double p, double delta_targ, double eta, double s, double l_plus, double xi) {
  check_unit(delta_targ, "delta");
  check_unit(eta, "eta");
  if (!(s >= 1) || !(l_plus >= 1)) throw std::invalid_argument("epsilon_prime: s and L+ must be at least 1");
  const double L = static_cast<double>(l_min(delta_targ, eta)) + l_plus;
  auto f = [&](double e) { return delta_prime(p, e, eta, s, L, xi); };
  double lo = 0.0, hi = 1e-3;
  while (f(hi) >= delta_targ) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) return kInf;
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= delta_targ) lo = mid; else hi = mid;
  }
  return hi;
}

double samples_for(double p, double eps, double delta, double xi) {
  const double gap = root_gap(p, eps);
  const double num = std::sqrt(xi) + std::sqrt(p);
  return 2.0 * num * num / (gap * gap) * std::log(kTwoE2 / delta);
}

double iterations_for(double p, double eps, double eps_tot, double delta_rest) {
  const double q = (p + eps) / (eps_tot - eps);
  return q * q * std::log(1.0 / delta_rest);
}

namespace {

struct InnerBest {
  double eps = kInf;
  std::uint64_t s = 0, l_plus = 0;
};

// Best (s, L+) at fixed eta: s is the largest count the budget allows for each L+.
InnerBest best_at_eta(double p, double delta, double budget, const CostModel& m, double xi, double eta) {
  InnerBest out;
  const double us = m.c1 * m.t * m.t * m.t;
  const double ul = m.c2 * m.r * m.r * m.r;
  const double lm = static_cast<double>(l_min(delta, eta));
  auto s_for = [&](double lp) { return std::floor(budget / (us + ul * (lp + lm))); };
  auto eval = [&](double lp) {
    const double s = s_for(lp);
    if (s < 1) return kInf;
    return epsilon_prime(p, delta, eta, s, lp, xi);
  };
  auto take = [&](double lp, double e) {
    if (e < out.eps) {
      out.eps = e;
      out.s = static_cast<std::uint64_t>(s_for(lp));
      out.l_plus = static_cast<std::uint64_t>(lp);
    }
  };
  if (ul == 0.0) {
    const double lp = static_cast<double>(kFreeL);
    take(lp, eval(lp));
    return out;
  }
  const double lp_max = std::floor((budget - us) / ul - lm);
  if (lp_max < 1) return out;
  // Geometric grid, then integer ternary search around the best point.
  std::vector<double> grid;
  for (double lp = 1; lp < lp_max; lp = std::max(lp + 1, std::floor(lp * 1.25))) grid.push_back(lp);
  grid.push_back(lp_max);
  std::size_t bi = 0;
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = eval(grid[i]);
    if (vals[i] < vals[bi]) bi = i;
  }
  take(grid[bi], vals[bi]);
  double a = bi == 0 ? grid[0] : grid[bi - 1];
  double b = bi + 1 == grid.size() ? grid.back() : grid[bi + 1];
  while (b - a > 2) {
    const double m1 = std::floor(a + (b - a) / 3), m2 = std::ceil(b - (b - a) / 3);
    const double f1 = eval(m1), f2 = eval(m2);
    take(m1, f1);
    take(m2, f2);
    if (f1 < f2) b = m2; else a = m1;
  }
  for (double lp = a; lp <= b; lp += 1) take(lp, eval(lp));
  return out;
}

}  // namespace

OptParamsResult opt_params(double p, double delta, double budget, const CostModel& m, double xi) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("opt_params: p outside [0, 1]");
  check_unit(delta, "delta");
  const double us = m.c1 * m.t * m.t * m.t;
  const double ul = m.c2 * m.r * m.r * m.r;
  if (us + ul * 2 > budget) throw InfeasibleError("opt_params: budget below one sample", us + 2 * ul);

  // Largest eta whose L_min still leaves room for one sample with L+ = 1.
  double eta_hi = 1.0 - 1e-9;
  if (ul > 0) {
    auto fits = [&](double eta) { return us + ul * (1.0 + static_cast<double>(l_min(delta, eta))) <= budget; };
    if (!fits(eta_hi)) {
      double lo = 1e-9, hi = eta_hi;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (fits(mid)) lo = mid; else hi = mid;
      }
      eta_hi = lo;
    }
  }
  const double eta_lo = 1e-6;
  auto g = [&](double eta) { return best_at_eta(p, delta, budget, m, xi, eta).eps; };
  Min1D best = minimize_1d(g, eta_lo, eta_hi, 24, 1e-4);
  InnerBest in = best_at_eta(p, delta, budget, m, xi, best.x);
  if (!(in.eps < kInf)) throw InfeasibleError("opt_params: no feasible parameters", us + 2 * ul);
  OptParamsResult r;
  r.eta = best.x;
  r.s = in.s;
  r.l_plus = in.l_plus;
  r.eps_star = in.eps;
  return r;
}

double initial_budget(double eps_tot, double delta_tot, const CostModel& m, double xi) {
  const double a = std::sqrt(xi) + 1.0;
  const double s0 = -2.0 * a * a / eps_tot * std::log(delta_tot / kTwoE2);
  return m.tau(s0, 1.0);
}

EstimateResult estimate(const RawEstimator& est, const EstimateOptions& opt) {
  if (!(opt.eps_tot > 0) || !(opt.delta_tot > 0 && opt.delta_tot < 1))
    throw std::invalid_argument("estimate: need eps_tot > 0 and delta_tot in (0, 1)");
  const auto t0 = std::chrono::steady_clock::now();
  const CompressedTask& task = est.task();
  const CostModel m = CostModel::for_task(task, opt.c1, opt.c2);
  const double xi = est.decomposition().xi_total;

  EstimateResult res;
  res.t0 = initial_budget(opt.eps_tot, opt.delta_tot, m, xi) * opt.t0_scale;
  double p_star = 1.0;
  for (int k = 1;; ++k) {
    if (k > opt.max_rounds) throw InfeasibleError("estimate: round cap exceeded", res.cost);
    EstimateRound rd;
    rd.k = k;
    rd.delta_k = 6.0 / (std::numbers::pi * std::numbers::pi * k * k) * opt.delta_tot;
    rd.budget = std::ldexp(res.t0, k);
    OptParamsResult op;
    try {
      op = opt_params(p_star, rd.delta_k, rd.budget, m, xi);
    } catch (const InfeasibleError&) {
      rd.eps_star = kInf;
      rd.p_star = p_star;
      res.trace.push_back(rd);
      continue;
    }
    rd.eta = op.eta;
    rd.s = op.s;
    rd.l_plus = op.l_plus;
    rd.L = op.l_plus + l_min(rd.delta_k, op.eta);
    rd.eps_star = op.eps_star;
    const bool exit = rd.eps_star <= opt.eps_tot;
    RawEstimResult raw = est.run(rd.s, rd.L, stream_seed(opt.seed, static_cast<std::uint64_t>(k)), opt.raw);
    rd.p_hat = raw.p_hat;
    rd.cost = m.tau(static_cast<double>(rd.s), static_cast<double>(rd.L));
    res.cost += rd.cost;
    p_star = std::max(0.0, std::min({1.0, p_star, rd.p_hat + rd.eps_star}));
    rd.p_star = p_star;
    res.trace.push_back(rd);
    if (exit) {
      res.p_hat = rd.p_hat;
      break;
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

EstimateResult estimate(const CompressedTask& task, const EstimateOptions& opt) {
  return estimate(RawEstimator(task), opt);
}

RuntimeBound runtime_upper_bound(const CostModel& m, double xi, double p, double delta_ub, double eps_tot,
                                 double delta_tot, int k_uub) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("runtime: p outside [0, 1]");
  check_unit(delta_ub, "delta_ub");
  check_unit(delta_tot, "delta_tot");
  RuntimeBound out;
  out.t0 = initial_budget(eps_tot, delta_tot, m, xi);
  for (int attempt = 0; attempt < 8; ++attempt, k_uub *= 2) {
    const double dk = delta_ub / k_uub;
    double p_star = 1.0;
    int k = 1;
    bool done = false;
    for (; k <= k_uub; ++k) {
      const double delta_k = 6.0 / (std::numbers::pi * std::numbers::pi * k * k) * delta_tot;
      const double budget = std::ldexp(out.t0, k);
      OptParamsResult op;
      try {
        op = opt_params(p_star, delta_k, budget, m, xi);
      } catch (const InfeasibleError&) {
        continue;
      }
      const double L = static_cast<double>(op.l_plus + l_min(delta_k, op.eta));
      const bool exit = op.eps_star <= eps_tot;
      // Deterministic stand-in for the round's estimate, optimised over eta~.
      double eta_hi = 1.0 - 1e-9;
      {
        double lo = 1e-9, hi = eta_hi;
        auto ok = [&](double e) { return L - static_cast<double>(l_min(dk, e)) >= 1.0; };
        if (!ok(hi)) {
          while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (ok(mid)) lo = mid; else hi = mid;
          }
          eta_hi = lo;
        }
      }
      auto pk_of = [&](double e) {
        const double lp = L - static_cast<double>(l_min(dk, e));
        if (lp < 1) return kInf;
        return p + epsilon_prime(p, dk, e, static_cast<double>(op.s), lp, xi);
      };
      const double pk = minimize_1d(pk_of, 1e-6, eta_hi, 16, 1e-4).f;
      p_star = std::max(0.0, std::min({1.0, p_star, pk + op.eps_star}));
      if (exit) {
        done = true;
        break;
      }
    }
    if (done) {
      out.k_ub = k;
      out.k_uub = k_uub;
      out.c_ub = std::ldexp(out.t0, k + 1);
      return out;
    }
  }
  throw InfeasibleError("runtime: no exit round found", kInf);
}

RuntimeBound runtime_upper_bound(const CompressedTask& task, double p, double delta_ub, double eps_tot,
                                 double delta_tot, double c1, double c2, int k_uub) {
  const CostModel m = CostModel::for_task(task, c1, c2);
  double xi = 1.0;
  for (double phi : task.phases) xi *= extent(phi);
  return runtime_upper_bound(m, xi, p, delta_ub, eps_tot, delta_tot, k_uub);
}

double informed_lower_bound(const CostModel& m, double xi, double p, double eps_tot, double delta_tot) {
  auto cost = [&](double u, double v) {
    const double eps = u * eps_tot, delta = v * delta_tot;
    const double s = std::ceil(samples_for(p, eps, delta, xi));
    if (m.r == 0) return m.tau(s, 0.0);
    const double L = std::ceil(iterations_for(p, eps, eps_tot, delta_tot - delta));
    return m.tau(s, std::max(1.0, L));
  };
  if (m.r == 0) return cost(1.0 - 1e-9, 1.0 - 1e-9);
  auto over_v = [&](double u) {
    return minimize_1d([&](double v) { return cost(u, v); }, 1e-6, 1.0 - 1e-6, 24, 1e-6).f;
  };
  return minimize_1d(over_v, 1e-4, 1.0 - 1e-4, 48, 1e-6).f;
}

}  // namespace stabsim
