// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabsim/circuit.hpp"
#include "stabsim/pauli.hpp"

namespace stabsim {

// Qubits 0..w-1 are register a, w..n-1 register b, n..n+t-1 the ancillas (register c).
struct GadgetizedCircuit {
  Circuit v;
  std::vector<double> phases;
  std::size_t n = 0, w = 0, t = 0;
};

GadgetizedCircuit gadgetize(const BornTask& task);

struct ConstrainOutcome {
  std::size_t n = 0, w = 0, t = 0;
  std::size_t v = 0;
  std::size_t r = 0;
  std::vector<std::size_t> J;
  std::vector<std::uint8_t> forced;
  GeneratingSet g_tilde;  // n+t qubits, before evaluating register a
  GeneratingSet g;        // t qubits
  bool consistent = true;
  long violated_j = -1;
  int violated_bit = -1;
};

ConstrainOutcome constrain_stabilizers(const GadgetizedCircuit& gc, const std::vector<std::uint8_t>& x);

double extent(double phi);

struct CompressedTask {
  std::size_t n = 0, w = 0, t = 0;
  std::size_t v = 0, r = 0;
  std::size_t t_prime = 0, r_prime = 0;
  std::vector<std::size_t> J;
  std::vector<std::uint8_t> forced;
  GeneratingSet g;  // t' qubits, t'-r' rows
  std::vector<double> phases;
  Circuit W;  // on t' qubits
  double xi = 1.0;

  long exponent() const {
    return static_cast<long>(t_prime) - static_cast<long>(r_prime) + static_cast<long>(v) - static_cast<long>(w);
  }
};

// Leaves W empty; gate_sequence fills it in.
CompressedTask reduce_t_count(const ConstrainOutcome& out, const std::vector<double>& phases);

// W with W g W^dag = {Z_0, ..., Z_{k-1}} (all + signs), k = number of rows.
Circuit gate_sequence(const GeneratingSet& g);

struct CompressResult {
  enum class Kind { ExactValue, DeterministicZero, Task };
  Kind kind = Kind::Task;
  double value = 0.0;  // for ExactValue / DeterministicZero
  CompressedTask task;  // bookkeeping (v, r, J, ...) is filled in every case
  long violated_j = -1;
  int violated_bit = -1;
};

CompressResult compress(const BornTask& task);

}  // namespace stabsim
