// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabsim/pauli.hpp"

namespace stabsim {

enum class GateKind : std::uint8_t { S, H, CX, CZ, T };

struct Gate {
  GateKind kind = GateKind::H;
  std::uint32_t q0 = 0;  // target for 1-qubit gates, control for CX
  std::uint32_t q1 = 0;  // CX target / CZ partner
  double angle = 0.0;    // T only

  static Gate s(std::uint32_t q) { return {GateKind::S, q, 0, 0.0}; }
  static Gate h(std::uint32_t q) { return {GateKind::H, q, 0, 0.0}; }
  static Gate cx(std::uint32_t c, std::uint32_t t) { return {GateKind::CX, c, t, 0.0}; }
  static Gate cz(std::uint32_t a, std::uint32_t b) { return {GateKind::CZ, a, b, 0.0}; }
  static Gate t(std::uint32_t q, double phi) { return {GateKind::T, q, 0, phi}; }

  bool two_qubit() const { return kind == GateKind::CX || kind == GateKind::CZ; }
  bool operator==(const Gate&) const = default;
};

struct Circuit {
  std::size_t n = 0;
  std::size_t w = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  Circuit(std::size_t nq, std::size_t wq) : n(nq), w(wq) {}

  std::size_t clifford_count() const;
  std::size_t t_count() const;
  std::size_t h_count() const;
  bool is_clifford() const { return t_count() == 0; }

  void append(const Gate& g) { gates.push_back(g); }
  void append(const Circuit& other);
  // Diagonal phase diag(1, e^{i phi}) for any real phi, written as S^k then one
  // T_phi' with phi' in (0, pi/2) when phi is not a multiple of pi/2.
  void append_phase(std::uint32_t q, double phi);
  void append_swap(std::uint32_t a, std::uint32_t b);
  // X = H S S H, up to nothing: exactly X.
  void append_x(std::uint32_t q);
  void append_ccz(std::uint32_t a, std::uint32_t b, std::uint32_t c);

  // Throws std::invalid_argument on a malformed gate.
  void validate() const;
};

struct BornTask {
  Circuit circuit;
  std::vector<std::uint8_t> x;  // outcome bits for qubits 0..w-1
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

BornTask parse_circuit(const std::string& text);
BornTask load_circuit_file(const std::string& path);
std::string serialize_circuit(const BornTask& task);

std::string bits_to_string(const std::vector<std::uint8_t>& bits);

// Relabels qubits by `perm` (old -> new).
Circuit permute_qubits(const Circuit& c, const std::vector<std::uint32_t>& perm);

// ---- generators ----

Circuit random_clifford_t_circuit(std::size_t n, std::size_t c, std::size_t t, std::uint64_t seed);

struct HiddenShiftInstance {
  std::size_t n = 0;
  Circuit circuit;  // full n-qubit circuit, w = 0
  std::vector<std::uint8_t> shift;
  std::vector<BornTask> tasks;  // tasks[j]: qubit j moved to position 0, outcome "1"
};

HiddenShiftInstance hidden_shift_circuit(std::size_t n, std::size_t ccz_count,
                                         std::size_t diag_per_ccz, std::uint64_t seed);

struct QaoaTerm {
  std::uint32_t u, v, w;
  int d;  // +1 or -1
};

struct QaoaInstance {
  std::size_t n = 0;
  std::size_t degree = 0;
  std::vector<QaoaTerm> terms;
};

// All but at most one qubit appear in exactly `degree` terms.
QaoaInstance random_qaoa_instance(std::size_t n, std::size_t degree, std::uint64_t seed);
void validate_qaoa_instance(const QaoaInstance& inst);

// H^n, then e^{-i gamma C}, then e^{-i beta B}.
Circuit qaoa_circuit(const QaoaInstance& inst, double beta, double gamma);

struct WeightedTask {
  BornTask task;
  double weight;  // d/2 times the sign returned by the Pauli reduction
};

// One task per term. Each task asks for outcome 0 on qubit 0, so that
// E = sum weight * (2p - 1).
std::vector<WeightedTask> qaoa_tasks(const QaoaInstance& inst, double beta, double gamma);

// Clifford C with sign * C^dag Z_0 C = P, gates listed in application order.
std::pair<Circuit, int> pauli_to_z1_circuit(const PauliOperator& p);

// U U^dag V(p) on n qubits: U is a random Clifford+T word on all qubits and V(p)
// rotates each of the w measured qubits so that outcome 0...0 has probability p.
BornTask planted_probability_task(std::size_t n, std::size_t w, std::size_t depth, std::size_t t,
                                  double p, std::uint64_t seed);
double planted_angle(double p, std::size_t w);

}  // namespace stabsim
