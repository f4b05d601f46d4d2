// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabsim/circuit.hpp"
#include "stabsim/compress.hpp"
#include "stabsim/compute.hpp"
#include "stabsim/estimate.hpp"

namespace stabsim {

enum class Path { CompressOnly, Compute, Estimate };
std::string path_name(Path p);

struct DispatchOptions {
  std::size_t cap = 50;
  unsigned threads = 0;
  double eps_tot = 0.05;
  double delta_tot = 1e-3;
  double delta_ub = 0.05;
  std::uint64_t seed = 0;
  double c1 = 1.0, c2 = 1.0;
};

struct PathChoice {
  Path path = Path::Compute;
  double compute_cost = 0;  // model units
  double estimate_cost = 0;  // C_UB at p = 1, model units; inf when RawEstim cannot run
};

// Throws InfeasibleError when neither path fits its cap.
PathChoice choose_path(const CompressedTask& task, const DispatchOptions& opt);

struct DispatchResult {
  PathChoice choice;
  double p = 0;
  CompressResult compressed;
  std::optional<ComputeResult> compute;
  std::optional<EstimateResult> estimate;
};

DispatchResult dispatch(const BornTask& task, const DispatchOptions& opt);

struct HiddenShiftRun {
  std::uint64_t seed = 0;
  double seconds = 0;
  bool recovered = false;
  std::size_t t_prime_sum = 0;
  std::size_t by_compress = 0;  // measurements answered without Compute
  std::vector<std::size_t> t_primes;
};

struct HiddenShiftReport {
  std::vector<HiddenShiftRun> runs;
  std::map<std::size_t, std::size_t> t_prime_histogram;
};

HiddenShiftReport bench_hidden_shift(std::size_t n, std::size_t ccz, std::size_t diag, std::size_t reps,
                                     std::uint64_t seed, unsigned threads = 0);

struct QaoaPoint {
  double beta = 0, gamma = 0, energy = 0;
  double seconds = 0;
  std::size_t t_prime_sum = 0;
};

// Energy via Compress + Compute on the per-term Pauli reduction.
QaoaPoint qaoa_energy(const QaoaInstance& inst, double beta, double gamma, unsigned threads = 0);
std::vector<QaoaPoint> bench_qaoa(const QaoaInstance& inst, const std::vector<double>& betas,
                                  const std::vector<double>& gammas, unsigned threads = 0);

struct Calibration {
  double seconds_per_sample = 0, seconds_per_inner_product = 0;
  double c1 = 0, c2 = 0;  // seconds per t'^3 and per r'^3
  std::size_t t = 0, r = 0;
};

// Times one psi(y) preparation and one equatorial inner product on a synthetic task.
Calibration calibrate(std::size_t t, std::size_t r, std::size_t reps, std::uint64_t seed);

// t' magic qubits with phase phi, Z_0..Z_{t'-r'-1} as constraints and W empty.
CompressedTask synthetic_task(std::size_t t_prime, std::size_t r_prime, double phi = 0.7853981633974483);

}  // namespace stabsim
