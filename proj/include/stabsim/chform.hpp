// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stabsim/circuit.hpp"
#include "stabsim/pauli.hpp"

namespace stabsim {

using cplx = std::complex<double>;

constexpr std::size_t kChMaxQubits = 64;

// r-qubit state 2^{-r/2} sum_x i^{q(x)} |x>, q(x) = sum_j A_jj x_j + 2 sum_{j<k} A_jk x_j x_k.
// A is row-major r*r, diagonal mod 4, off-diagonal mod 2, symmetric.
struct EquatorialState {
  std::size_t r = 0;
  std::vector<std::uint8_t> A;

  std::uint8_t at(std::size_t j, std::size_t k) const { return A[j * r + k]; }
  static EquatorialState random(std::size_t r, std::mt19937_64& rng);
  // index enumerates the family: diagonal digits base 4, then upper-triangle bits.
  static EquatorialState from_index(std::size_t r, std::uint64_t index);
  static std::uint64_t family_size(std::size_t r);
};

// omega * U_C * U_H |s>. Row p of F/G/M is a bit mask over columns; U_C^dag Z_p U_C = Z^{G_p}
// and U_C^dag X_p U_C = i^{gamma_p} X^{F_p} Z^{M_p}. U_H applies H where v is set.
class CHForm {
 public:
  CHForm() = default;
  explicit CHForm(std::size_t n);

  std::size_t n = 0;
  std::vector<Word> F, G, M;
  std::vector<std::uint8_t> gamma;
  Word v = 0, s = 0;
  cplx omega{1.0, 0.0};

  bool is_zero() const { return omega == cplx(0.0, 0.0); }
  bool well_formed() const;

  void left_s(std::size_t q);
  void left_cz(std::size_t q, std::size_t r);
  void left_cx(std::size_t c, std::size_t t);
  void left_h(std::size_t q);
  void apply_left(const Gate& g);
  void apply_left(const Circuit& c);

  void right_s(std::size_t q);
  void right_cz(std::size_t q, std::size_t r);
  void right_cx(std::size_t c, std::size_t t);
  void apply_right(const Gate& g);

  // <x|state>, bit q of x is qubit q.
  cplx amplitude(Word x) const;

  // state <- (I + P)/2 state, P Hermitian.
  void project_pauli(const PauliOperator& p);
  // state <- e^{-i pi/4} (I + iP)/sqrt2 state, P Hermitian.
  void apply_one_plus_i_pauli(const PauliOperator& p);
  // state <- (|0><0|^{k} (x) I) state.
  void project_zero_prefix(std::size_t k);
  // For a state |0> (x) |sigma>, leaves |sigma> on qubits 1..n-1 (renumbered from 0).
  void discard_leading_zero_qubit();

  cplx inner_product_equatorial(const EquatorialState& theta) const;
  std::vector<cplx> statevector() const;

  std::string snapshot() const;
  static CHForm from_snapshot(const std::string& bytes);

 private:
  // omega U_C U_H (|t> + i^delta |u>)/sqrt2 scaled by (-1)^alpha.
  void update_sum(Word t, Word u, unsigned delta, unsigned alpha);
  // (I + i^k P) U_C U_H |s> with the 1/sqrt2 from update_sum.
  void apply_pauli_sum(const PauliOperator& p, unsigned k);
  void check_qubit(std::size_t q) const;
};

}  // namespace stabsim
