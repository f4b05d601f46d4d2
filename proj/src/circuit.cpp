// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/circuit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace stabsim {

std::size_t Circuit::clifford_count() const {
  std::size_t c = 0;
  for (const auto& g : gates) c += g.kind != GateKind::T;
  return c;
}

std::size_t Circuit::t_count() const {
  std::size_t c = 0;
  for (const auto& g : gates) c += g.kind == GateKind::T;
  return c;
}

std::size_t Circuit::h_count() const {
  std::size_t c = 0;
  for (const auto& g : gates) c += g.kind == GateKind::H;
  return c;
}

void Circuit::append(const Circuit& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void Circuit::append_phase(std::uint32_t q, double phi) {
  constexpr double kQuarter = std::numbers::pi / 2;
  constexpr double kTol = 1e-12;
  double r = std::fmod(phi, 2 * std::numbers::pi);
  if (r < 0) r += 2 * std::numbers::pi;
  long k = static_cast<long>(std::floor(r / kQuarter));
  double rest = r - static_cast<double>(k) * kQuarter;
  if (rest > kQuarter - kTol) {
    ++k;
    rest = 0.0;
  }
  if (rest < kTol) rest = 0.0;
  for (long i = 0; i < (k & 3); ++i) gates.push_back(Gate::s(q));
  if (rest > 0.0) gates.push_back(Gate::t(q, rest));
}

void Circuit::append_swap(std::uint32_t a, std::uint32_t b) {
  gates.push_back(Gate::cx(a, b));
  gates.push_back(Gate::cx(b, a));
  gates.push_back(Gate::cx(a, b));
}

void Circuit::append_x(std::uint32_t q) {
  gates.push_back(Gate::h(q));
  gates.push_back(Gate::s(q));
  gates.push_back(Gate::s(q));
  gates.push_back(Gate::h(q));
}

void Circuit::append_ccz(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  // Toffoli phase network without the target Hadamards; T^dag = S^3 T.
  auto tdg = [&](std::uint32_t q) { append_phase(q, 7 * std::numbers::pi / 4); };
  auto t = [&](std::uint32_t q) { gates.push_back(Gate::t(q, std::numbers::pi / 4)); };
  gates.push_back(Gate::cx(b, c));
  tdg(c);
  gates.push_back(Gate::cx(a, c));
  t(c);
  gates.push_back(Gate::cx(b, c));
  tdg(c);
  gates.push_back(Gate::cx(a, c));
  t(b);
  t(c);
  gates.push_back(Gate::cx(a, b));
  t(a);
  tdg(b);
  gates.push_back(Gate::cx(a, b));
}

void Circuit::validate() const {
  if (w > n) throw std::invalid_argument("measured qubit count exceeds width");
  for (const auto& g : gates) {
    if (g.q0 >= n || (g.two_qubit() && g.q1 >= n)) throw std::invalid_argument("qubit index out of range");
    if (g.two_qubit() && g.q0 == g.q1) throw std::invalid_argument("control equals target");
    if (g.kind == GateKind::T && !(g.angle > 0.0 && g.angle < std::numbers::pi / 2))
      throw std::invalid_argument("T angle outside (0, pi/2)");
  }
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "expected non-negative integer, got '" + s + "'");
  return v;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(line, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad number '" + s + "'");
  }
}

}  // namespace

BornTask parse_circuit(const std::string& text) {
  BornTask task;
  bool have_n = false, have_w = false, have_out = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  auto qubit = [&](const std::string& tok) -> std::uint32_t {
    if (!have_n) throw ParseError(lineno, "gate before 'qubits' header");
    std::uint64_t q = parse_uint(tok, lineno);
    if (q >= task.circuit.n) throw ParseError(lineno, "qubit index " + tok + " out of range");
    return static_cast<std::uint32_t>(q);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    const std::string& op = tok[0];
    auto want = [&](std::size_t k) {
      if (tok.size() != k) throw ParseError(lineno, "'" + op + "' expects " + std::to_string(k - 1) + " argument(s)");
    };
    if (op == "qubits") {
      want(2);
      if (have_n) throw ParseError(lineno, "duplicate 'qubits'");
      task.circuit.n = parse_uint(tok[1], lineno);
      if (task.circuit.n == 0) throw ParseError(lineno, "need at least one qubit");
      have_n = true;
    } else if (op == "measure") {
      want(2);
      if (!have_n) throw ParseError(lineno, "'measure' before 'qubits'");
      task.circuit.w = parse_uint(tok[1], lineno);
      if (task.circuit.w > task.circuit.n) throw ParseError(lineno, "measure count exceeds qubits");
      have_w = true;
    } else if (op == "S" || op == "H") {
      want(2);
      std::uint32_t q = qubit(tok[1]);
      task.circuit.append(op == "S" ? Gate::s(q) : Gate::h(q));
    } else if (op == "CX" || op == "CZ") {
      want(3);
      std::uint32_t a = qubit(tok[1]), b = qubit(tok[2]);
      if (a == b) throw ParseError(lineno, "control equals target");
      task.circuit.append(op == "CX" ? Gate::cx(a, b) : Gate::cz(a, b));
    } else if (op == "T") {
      want(3);
      std::uint32_t q = qubit(tok[1]);
      double phi = parse_double(tok[2], lineno);
      if (!(phi > 0.0 && phi < std::numbers::pi / 2)) throw ParseError(lineno, "angle outside (0, pi/2)");
      task.circuit.append(Gate::t(q, phi));
    } else if (op == "out") {
      if (!have_w) throw ParseError(lineno, "'out' before 'measure'");
      if (tok.size() == 1 && task.circuit.w == 0) {
        task.x.clear();
      } else {
        want(2);
        if (tok[1].size() != task.circuit.w) throw ParseError(lineno, "outcome length differs from measure count");
        task.x.clear();
        for (char ch : tok[1]) {
          if (ch != '0' && ch != '1') throw ParseError(lineno, "outcome must be a bitstring");
          task.x.push_back(ch == '1');
        }
      }
      have_out = true;
    } else {
      throw ParseError(lineno, "unknown directive '" + op + "'");
    }
  }
  if (!have_n) throw ParseError(lineno, "missing 'qubits' header");
  if (!have_w) throw ParseError(lineno, "missing 'measure' header");
  if (!have_out) {
    if (task.circuit.w != 0) throw ParseError(lineno, "missing 'out' line");
  }
  return task;
}

BornTask load_circuit_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_circuit(ss.str());
}

std::string serialize_circuit(const BornTask& task) {
  std::ostringstream os;
  os.precision(17);
  os << "qubits " << task.circuit.n << "\nmeasure " << task.circuit.w << "\n";
  for (const auto& g : task.circuit.gates) {
    switch (g.kind) {
      case GateKind::S: os << "S " << g.q0 << "\n"; break;
      case GateKind::H: os << "H " << g.q0 << "\n"; break;
      case GateKind::CX: os << "CX " << g.q0 << " " << g.q1 << "\n"; break;
      case GateKind::CZ: os << "CZ " << g.q0 << " " << g.q1 << "\n"; break;
      case GateKind::T: os << "T " << g.q0 << " " << g.angle << "\n"; break;
    }
  }
  os << "out " << bits_to_string(task.x) << "\n";
  return os.str();
}

Circuit permute_qubits(const Circuit& c, const std::vector<std::uint32_t>& perm) {
  Circuit out(c.n, c.w);
  out.gates.reserve(c.gates.size());
  for (Gate g : c.gates) {
    g.q0 = perm[g.q0];
    if (g.two_qubit()) g.q1 = perm[g.q1];
    out.gates.push_back(g);
  }
  return out;
}

}  // namespace stabsim
