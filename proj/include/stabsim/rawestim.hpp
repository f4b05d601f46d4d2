// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabsim/chform.hpp"
#include "stabsim/compress.hpp"

namespace stabsim {

// |T_phi^dag> = alpha |+> + alpha' S^3 |+> per magic qubit.
struct MagicDecomposition {
  std::vector<double> phi;
  std::vector<cplx> alpha, alpha_p;
  std::vector<double> q1;  // probability of y_j = 1
  std::vector<double> xi;
  double xi_total = 1.0;

  static MagicDecomposition from_phases(const std::vector<double>& phases);
};

// Counter-based stream: sample k of a run depends only on (seed, k).
struct SplitMix64 {
  using result_type = std::uint64_t;
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
};

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

struct RawEstimOptions {
  unsigned threads = 0;
  double work_cap = 1e13;  // refuse when s*t'^3 + s*L*r'^3 exceeds this
  // Evaluate the equatorial projections on a dense 2^{r'} accumulator when r' is small.
  // Same estimator, different evaluation order.
  std::size_t dense_max_r = 10;
};

struct RawEstimResult {
  double p_hat = 0.0;
  std::uint64_t s = 0, L = 0;
  std::uint64_t seed = 0;
  double xi_prime = 1.0;
  double max_norm2 = 0.0;  // largest sampled ||psi(y)||^2
  double seconds_samples = 0.0, seconds_norm = 0.0, seconds = 0.0;
};

class RawEstimator {
 public:
  explicit RawEstimator(const CompressedTask& task);

  const CompressedTask& task() const { return task_; }
  const MagicDecomposition& decomposition() const { return dec_; }
  const std::vector<PauliOperator>& conjugated_z() const { return pk_; }

  Word sample_y(SplitMix64& rng) const;
  // psi(y) on r' qubits, including sqrt(xi') 2^{e/2} and the coefficient phases.
  CHForm prepare_psi(Word y) const;

  RawEstimResult run(std::uint64_t s, std::uint64_t L, std::uint64_t seed, const RawEstimOptions& opt = {}) const;

 private:
  std::vector<cplx> dense_psi(Word y) const;

  CompressedTask task_;
  MagicDecomposition dec_;
  CHForm base_;  // W H^{t'} |0>
  std::vector<PauliOperator> pk_;
  std::size_t k_ = 0;  // t' - r'
  double scale_ = 1.0;
  std::vector<std::vector<cplx>> table_;  // psi(y) for every y when small
};

RawEstimResult raw_estim(const CompressedTask& task, std::uint64_t s, std::uint64_t L, std::uint64_t seed,
                         const RawEstimOptions& opt = {});

// Amplitude-space value 2^{-r/2} i^{q(x)} of an equatorial state.
cplx equatorial_amplitude(const EquatorialState& theta, Word x);

}  // namespace stabsim
