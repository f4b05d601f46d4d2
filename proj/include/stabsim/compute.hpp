// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "stabsim/compress.hpp"

namespace stabsim {

struct ComputeOptions {
  std::size_t cap = 50;  // refuse when t' - r' exceeds this
  unsigned threads = 0;  // 0: STABSIM_THREADS or 1
};

struct ComputeResult {
  double p = 0.0;
  std::uint64_t terms = 0;
  double seconds = 0.0;
  std::size_t t_prime = 0, r_prime = 0;
};

// Model cost 2^{t'-r'} * t' in elementary Pauli-word operations.
double compute_model_cost(const CompressedTask& task);

ComputeResult compute_probability(const CompressedTask& task, const ComputeOptions& opt = {});

// Resolves a thread request: explicit value, then STABSIM_THREADS, then 1.
unsigned resolve_threads(unsigned requested);

}  // namespace stabsim
