// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabsim/circuit.hpp"
#include "stabsim/pauli.hpp"

namespace stabsim {

using cplx = std::complex<double>;

constexpr std::size_t kDenseMaxQubits = 24;

// Little-endian: qubit q is bit q of the amplitude index.
class DenseState {
 public:
  explicit DenseState(std::size_t n);

  std::size_t n() const { return n_; }
  std::vector<cplx>& amps() { return amps_; }
  const std::vector<cplx>& amps() const { return amps_; }

  void apply(const Gate& g);
  void apply(const Circuit& c);
  void apply_x(std::size_t q);
  void apply_phase(std::size_t q, double phi);
  // psi <- P psi, including the i^phase factor.
  void apply_pauli(const PauliOperator& p);

  double norm2() const;

 private:
  std::size_t n_;
  std::vector<cplx> amps_;
};

DenseState statevector_simulate(const Circuit& c);
double born_probability(const Circuit& c, const std::vector<std::uint8_t>& x, std::size_t w);
double born_probability(const BornTask& task);

// Dense 2^n x 2^n matrix of a Pauli (row-major), for small-n checks.
std::vector<cplx> pauli_matrix(const PauliOperator& p);
std::vector<cplx> circuit_unitary(const Circuit& c);

}  // namespace stabsim
