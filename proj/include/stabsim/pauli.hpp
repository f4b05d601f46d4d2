// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stabsim {

using Word = std::uint64_t;

inline std::size_t num_words(std::size_t bits) { return (bits + 63) / 64; }

// P = i^phase * X^x Z^z (X applied after Z). With this convention Y carries x=z=1
// and one extra unit of phase.
struct PauliOperator {
  std::size_t n = 0;
  std::vector<Word> x, z;
  unsigned phase = 0;

  PauliOperator() = default;
  explicit PauliOperator(std::size_t nq) : n(nq), x(num_words(nq), 0), z(num_words(nq), 0) {}

  bool xbit(std::size_t q) const { return (x[q >> 6] >> (q & 63)) & 1; }
  bool zbit(std::size_t q) const { return (z[q >> 6] >> (q & 63)) & 1; }
  void set_x(std::size_t q, bool b) {
    Word m = Word{1} << (q & 63);
    x[q >> 6] = b ? (x[q >> 6] | m) : (x[q >> 6] & ~m);
  }
  void set_z(std::size_t q, bool b) {
    Word m = Word{1} << (q & 63);
    z[q >> 6] = b ? (z[q >> 6] | m) : (z[q >> 6] & ~m);
  }
  void flip_x(std::size_t q) { x[q >> 6] ^= Word{1} << (q & 63); }
  void flip_z(std::size_t q) { z[q >> 6] ^= Word{1} << (q & 63); }

  bool is_identity_mask() const;
  std::size_t y_count() const;
  bool is_hermitian() const { return ((phase + y_count()) & 1) == 0; }
  // +1 or -1 for Hermitian operators, read in the Y-letter convention.
  int sign() const { return (((phase + 4 - (y_count() & 3)) >> 1) & 1) ? -1 : 1; }

  // Parses strings like "+XIZ", "-iY_Z". Qubit 0 is the leftmost letter.
  static PauliOperator parse(const std::string& text);
  std::string str() const;

  bool operator==(const PauliOperator& o) const {
    return n == o.n && x == o.x && z == o.z && (phase & 3) == (o.phase & 3);
  }
};

// a <- a * b
void mul_right(PauliOperator& a, const PauliOperator& b);
PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b);
bool commutes(const PauliOperator& a, const PauliOperator& b);

// In-place conjugation P <- U P U^dagger for the Clifford alphabet.
void conj_h(PauliOperator& p, std::size_t q);
void conj_s(PauliOperator& p, std::size_t q);
void conj_cx(PauliOperator& p, std::size_t c, std::size_t t);
void conj_cz(PauliOperator& p, std::size_t a, std::size_t b);

struct GeneratingSet {
  std::size_t n = 0;
  std::vector<PauliOperator> rows;

  GeneratingSet() = default;
  explicit GeneratingSet(std::size_t nq) : n(nq) {}
  std::size_t size() const { return rows.size(); }
  void erase_row(std::size_t i) { rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i)); }
  // ASCII block dump, one row per line: "+ 0110|1001".
  std::string ascii() const;
};

struct Circuit;

// {V Z_j V^dagger} for every qubit of a Clifford-only circuit.
GeneratingSet evolve_z_generators(const Circuit& v);

struct ZxPivots {
  long xrow = -1;
  long zrow = -1;
};

// Brings `g` into ZX(j)-form. Returns the rows acting with X/Y and with Z on qubit j.
ZxPivots to_zx_form(GeneratingSet& g, std::size_t j);

std::size_t gf2_rank(const GeneratingSet& g);
bool pairwise_commuting(const GeneratingSet& g);

// 0-based index of the generator flipped between Gray(j-1) and Gray(j).
inline unsigned gray_flip_index(std::uint64_t j) { return static_cast<unsigned>(std::countr_zero(j)); }
inline std::uint64_t gray_code(std::uint64_t j) { return j ^ (j >> 1); }

// <T_phi^dag|P|T_phi^dag> for the product state of single-qubit magic states.
double magic_expectation(const PauliOperator& p, const std::vector<double>& phases);

}  // namespace stabsim
