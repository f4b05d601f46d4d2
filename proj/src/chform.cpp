// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/chform.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "stabsim/errors.hpp"

namespace stabsim {

namespace {

inline unsigned parity(Word w) { return static_cast<unsigned>(std::popcount(w) & 1); }
inline bool bit(Word w, std::size_t q) { return (w >> q) & 1; }
inline Word mask(std::size_t q) { return Word{1} << q; }

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

}  // namespace

// ---- equatorial states ----

EquatorialState EquatorialState::random(std::size_t r, std::mt19937_64& rng) {
  EquatorialState e;
  e.r = r;
  e.A.assign(r * r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    e.A[j * r + j] = static_cast<std::uint8_t>(rng() & 3);
    for (std::size_t k = j + 1; k < r; ++k) {
      auto b = static_cast<std::uint8_t>(rng() & 1);
      e.A[j * r + k] = e.A[k * r + j] = b;
    }
  }
  return e;
}

std::uint64_t EquatorialState::family_size(std::size_t r) {
  return std::uint64_t{1} << (2 * r + r * (r - 1) / 2);
}

EquatorialState EquatorialState::from_index(std::size_t r, std::uint64_t index) {
  EquatorialState e;
  e.r = r;
  e.A.assign(r * r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    e.A[j * r + j] = static_cast<std::uint8_t>(index & 3);
    index >>= 2;
  }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j + 1; k < r; ++k) {
      e.A[j * r + k] = e.A[k * r + j] = static_cast<std::uint8_t>(index & 1);
      index >>= 1;
    }
  return e;
}

// ---- construction ----

CHForm::CHForm(std::size_t nq) : n(nq), F(nq), G(nq), M(nq, 0), gamma(nq, 0) {
  if (nq > kChMaxQubits) throw std::invalid_argument("CH form supports at most 64 qubits");
  for (std::size_t q = 0; q < nq; ++q) F[q] = G[q] = mask(q);
}

bool CHForm::well_formed() const {
  // F G^T = I: X_p and Z_q anticommute exactly when p == q.
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (parity(F[p] & G[q]) != (p == q ? 1u : 0u)) return false;
  return true;
}

void CHForm::check_qubit(std::size_t q) const {
  if (q >= n) throw std::out_of_range("CH form: qubit index out of range");
}

// ---- left multiplication ----

void CHForm::left_s(std::size_t q) {
  check_qubit(q);
  M[q] ^= G[q];
  gamma[q] = (gamma[q] + 3) & 3;
}

void CHForm::left_cz(std::size_t q, std::size_t r) {
  check_qubit(q);
  check_qubit(r);
  M[q] ^= G[r];
  M[r] ^= G[q];
}

void CHForm::left_cx(std::size_t c, std::size_t t) {
  check_qubit(c);
  check_qubit(t);
  gamma[c] = static_cast<std::uint8_t>((gamma[c] + gamma[t] + 2 * parity(M[c] & F[t])) & 3);
  G[t] ^= G[c];
  F[c] ^= F[t];
  M[c] ^= M[t];
}

void CHForm::left_h(std::size_t q) {
  check_qubit(q);
  if (is_zero()) return;
  const Word t = s ^ (G[q] & v);
  const Word u = s ^ (F[q] & ~v) ^ (M[q] & v);
  const unsigned alpha = parity(G[q] & ~v & s);
  const unsigned beta = parity(M[q] & ~v & s) ^ parity(F[q] & v & M[q]) ^ parity(F[q] & v & s);
  const unsigned delta = (gamma[q] + 2 * (alpha + beta)) & 3;
  update_sum(t, u, delta, alpha);
}

void CHForm::apply_left(const Gate& g) {
  switch (g.kind) {
    case GateKind::S: left_s(g.q0); break;
    case GateKind::H: left_h(g.q0); break;
    case GateKind::CX: left_cx(g.q0, g.q1); break;
    case GateKind::CZ: left_cz(g.q0, g.q1); break;
    case GateKind::T: throw std::invalid_argument("CH form: T gates are not Clifford");
  }
}

void CHForm::apply_left(const Circuit& c) {
  for (const auto& g : c.gates) apply_left(g);
}

// ---- right multiplication (column operations) ----

void CHForm::right_s(std::size_t q) {
  check_qubit(q);
  for (std::size_t p = 0; p < n; ++p)
    if (bit(F[p], q)) {
      M[p] ^= mask(q);
      gamma[p] = (gamma[p] + 3) & 3;
    }
}

void CHForm::right_cz(std::size_t q, std::size_t r) {
  check_qubit(q);
  check_qubit(r);
  for (std::size_t p = 0; p < n; ++p) {
    const bool fq = bit(F[p], q), fr = bit(F[p], r);
    if (fr) M[p] ^= mask(q);
    if (fq) M[p] ^= mask(r);
    if (fq && fr) gamma[p] = (gamma[p] + 2) & 3;
  }
}

void CHForm::right_cx(std::size_t c, std::size_t t) {
  check_qubit(c);
  check_qubit(t);
  for (std::size_t p = 0; p < n; ++p) {
    if (bit(G[p], t)) G[p] ^= mask(c);
    if (bit(F[p], c)) F[p] ^= mask(t);
    if (bit(M[p], t)) M[p] ^= mask(c);
  }
}

void CHForm::apply_right(const Gate& g) {
  switch (g.kind) {
    case GateKind::S: right_s(g.q0); break;
    case GateKind::CX: right_cx(g.q0, g.q1); break;
    case GateKind::CZ: right_cz(g.q0, g.q1); break;
    default: throw std::invalid_argument("CH form: only S, CX, CZ act on the right");
  }
}

// ---- superposition update ----

namespace {

struct HDecomp {
  cplx omega;
  bool a, b, c;
};

// H^v (|y> + i^delta |z>) = omega S^a H^b |c> on one qubit, y != z.
HDecomp h_decompose(bool v, bool y, bool z, unsigned delta) {
  if (y == z) throw InvariantError("CH form: degenerate single-qubit sum");
  HDecomp d{};
  if (!v) {
    d.omega = kIPow[(delta * (y ? 1u : 0u)) & 3];
    const unsigned delta2 = y ? ((4 - delta) & 3) : delta;
    d.c = (delta2 >> 1) & 1;
    d.a = delta2 & 1;
    d.b = true;
  } else if (!(delta & 1)) {
    d.a = false;
    d.b = false;
    d.c = (delta >> 1) & 1;
    d.omega = (d.c && y) ? -1.0 : 1.0;
  } else {
    d.omega = kInvSqrt2 * (1.0 + kIPow[delta & 3]);
    d.a = true;
    d.b = true;
    d.c = !(((delta >> 1) & 1) ^ y);
  }
  return d;
}

}  // namespace

void CHForm::update_sum(Word t, Word u, unsigned delta, unsigned alpha) {
  const double sgn = (alpha & 1) ? -1.0 : 1.0;
  if (t == u) {
    s = t;
    omega *= kInvSqrt2 * sgn * (1.0 + kIPow[delta & 3]);
    return;
  }
  const Word diff = t ^ u;
  const Word set0 = diff & ~v;
  const Word set1 = diff & v;
  std::size_t i;
  if (set0) {
    i = static_cast<std::size_t>(std::countr_zero(set0));
    for (Word m = set0 & ~mask(i); m; m &= m - 1) right_cx(i, static_cast<std::size_t>(std::countr_zero(m)));
    for (Word m = set1; m; m &= m - 1) right_cz(i, static_cast<std::size_t>(std::countr_zero(m)));
  } else {
    i = static_cast<std::size_t>(std::countr_zero(set1));
    for (Word m = set1 & ~mask(i); m; m &= m - 1) right_cx(static_cast<std::size_t>(std::countr_zero(m)), i);
  }
  Word y, z;
  if (bit(t, i)) {
    // |t> + i^d |u> = i^d (|u> + i^{-d} |t>)
    y = u;
    z = u ^ mask(i);
    omega *= kIPow[delta & 3];
    delta = (4 - (delta & 3)) & 3;
  } else {
    y = t;
    z = t ^ mask(i);
  }
  HDecomp d = h_decompose(bit(v, i), bit(y, i), bit(z, i), delta);
  s = d.c ? (y | mask(i)) : (y & ~mask(i));
  omega *= sgn * d.omega;
  if (d.a) right_s(i);
  v = d.b ? (v | mask(i)) : (v & ~mask(i));
}

void CHForm::apply_pauli_sum(const PauliOperator& p, unsigned k) {
  if (p.n != n) throw std::invalid_argument("CH form: Pauli width mismatch");
  if (!p.is_hermitian()) throw std::invalid_argument("CH form: Pauli must be Hermitian");
  const Word px = n ? p.x[0] : 0, pz = n ? p.z[0] : 0;
  // R = U_C^dag P U_C.
  Word rx = 0, rz = 0;
  unsigned re = p.phase;
  for (Word m = px; m; m &= m - 1) {
    auto q = static_cast<std::size_t>(std::countr_zero(m));
    re += gamma[q] + 2 * static_cast<unsigned>(std::popcount(rz & F[q]));
    rx ^= F[q];
    rz ^= M[q];
  }
  for (Word m = pz; m; m &= m - 1) rz ^= G[static_cast<std::size_t>(std::countr_zero(m))];
  // Through U_H: X <-> Z on v, XZ -> -XZ.
  re += 2 * static_cast<unsigned>(std::popcount(rx & rz & v));
  const Word nx = (rx & ~v) | (rz & v);
  const Word nz = (rz & ~v) | (rx & v);
  const unsigned b = (k + re + 2 * parity(nz & s)) & 3;
  if (nx == 0) {
    omega *= kInvSqrt2 * (1.0 + kIPow[b]);
    return;
  }
  update_sum(s, s ^ nx, b, 0);
}

void CHForm::project_pauli(const PauliOperator& p) {
  if (is_zero()) return;
  apply_pauli_sum(p, 0);
  omega *= kInvSqrt2;
}

void CHForm::apply_one_plus_i_pauli(const PauliOperator& p) {
  if (is_zero()) return;
  apply_pauli_sum(p, 1);
  omega *= std::polar(1.0, -std::numbers::pi / 4);
}

void CHForm::project_zero_prefix(std::size_t k) {
  if (k > n) throw std::invalid_argument("CH form: projection prefix longer than the state");
  for (std::size_t j = 0; j < k && !is_zero(); ++j) {
    PauliOperator z(n);
    z.set_z(j, true);
    project_pauli(z);
  }
}

void CHForm::discard_leading_zero_qubit() {
  if (n == 0) throw std::invalid_argument("CH form: nothing to discard");
  if (!is_zero()) {
    // At most one index with v = 0, s = 1.
    const Word ones = ~v & s;
    if (ones && (ones & (ones - 1))) {
      auto a = static_cast<std::size_t>(std::countr_zero(ones));
      for (Word m = ones & ~mask(a); m; m &= m - 1) {
        auto b = static_cast<std::size_t>(std::countr_zero(m));
        right_cx(a, b);
        s &= ~mask(b);
      }
    }
    const Word allowed = ~v & ~s;
    if (G[0] & ~allowed) throw InvariantError("discard: qubit 0 is not in |0>");
    if (!G[0]) throw InvariantError("discard: singular G");
    if (!bit(G[0], 0)) {
      auto j = static_cast<std::size_t>(std::countr_zero(G[0]));
      right_cx(0, j);
      right_cx(j, 0);
      right_cx(0, j);
      auto swap_bits = [&](Word& w) {
        const bool b0 = bit(w, 0), bj = bit(w, j);
        if (b0 != bj) w ^= mask(0) | mask(j);
      };
      swap_bits(v);
      swap_bits(s);
    }
    for (Word m = G[0] & ~mask(0); m; m &= m - 1) right_cx(static_cast<std::size_t>(std::countr_zero(m)), 0);
    STABSIM_CHECK(G[0] == mask(0) && !bit(v, 0) && !bit(s, 0), "discard: failed to isolate qubit 0");
  }
  auto drop_col = [](Word w) { return w >> 1; };
  std::vector<Word> f2, g2, m2;
  for (std::size_t p = 1; p < n; ++p) {
    f2.push_back(drop_col(F[p]));
    g2.push_back(drop_col(G[p]));
    m2.push_back(drop_col(M[p]));
  }
  F.swap(f2);
  G.swap(g2);
  M.swap(m2);
  gamma.erase(gamma.begin());
  v >>= 1;
  s >>= 1;
  --n;
  if (is_zero()) {
    *this = CHForm(n);
    omega = 0.0;
  }
}

// ---- inner products ----

cplx CHForm::amplitude(Word x) const {
  if (is_zero()) return 0.0;
  unsigned mu = 0;
  Word u = 0;
  for (Word m = x; m; m &= m - 1) {
    auto p = static_cast<std::size_t>(std::countr_zero(m));
    if (p >= n) throw std::invalid_argument("CH form: basis string wider than the state");
    mu += gamma[p];
    u ^= F[p];
    mu += 2 * parity(M[p] & u);
  }
  if ((u ^ s) & ~v) return 0.0;
  double mag = std::ldexp(1.0, -static_cast<int>(std::popcount(v)) / 2);
  if (std::popcount(v) & 1) mag *= kInvSqrt2;
  const double sgn = parity(v & u & s) ? -1.0 : 1.0;
  return omega * mag * sgn * kIPow[mu & 3];
}

cplx CHForm::inner_product_equatorial(const EquatorialState& theta) const {
  if (theta.r != n) throw std::invalid_argument("equatorial state width mismatch");
  if (is_zero()) return 0.0;
  CHForm c = *this;
  for (std::size_t j = 0; j < n; ++j)
    for (unsigned k = 0; k < ((4u - theta.at(j, j)) & 3u); ++k) c.left_s(j);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (theta.at(j, k) & 1) c.left_cz(j, k);
  for (std::size_t j = 0; j < n; ++j) c.left_h(j);
  return c.amplitude(0);
}

std::vector<cplx> CHForm::statevector() const {
  if (n > 20) throw std::invalid_argument("CH form: statevector limited to 20 qubits");
  std::vector<cplx> out(std::size_t{1} << n);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = amplitude(x);
  return out;
}

// ---- snapshot ----

namespace {
constexpr char kMagic[4] = {'S', 'S', 'C', 'H'};
constexpr std::uint8_t kVersion = 1;

template <class T>
void put(std::string& out, const T& v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::invalid_argument("CH snapshot truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}
}  // namespace

std::string CHForm::snapshot() const {
  std::string out(kMagic, 4);
  put(out, kVersion);
  put(out, static_cast<std::uint8_t>(n));
  for (const auto* rows : {&F, &G, &M})
    for (Word w : *rows) put(out, w);
  for (auto g : gamma) put(out, g);
  put(out, v);
  put(out, s);
  put(out, omega.real());
  put(out, omega.imag());
  return out;
}

CHForm CHForm::from_snapshot(const std::string& bytes) {
  if (bytes.size() < 6 || bytes.compare(0, 4, kMagic, 4) != 0) throw std::invalid_argument("not a CH snapshot");
  std::size_t pos = 4;
  if (get<std::uint8_t>(bytes, pos) != kVersion) throw std::invalid_argument("unsupported CH snapshot version");
  CHForm c(get<std::uint8_t>(bytes, pos));
  for (auto* rows : {&c.F, &c.G, &c.M})
    for (Word& w : *rows) w = get<Word>(bytes, pos);
  for (auto& g : c.gamma) g = get<std::uint8_t>(bytes, pos) & 3;
  c.v = get<Word>(bytes, pos);
  c.s = get<Word>(bytes, pos);
  double re = get<double>(bytes, pos);
  double im = get<double>(bytes, pos);
  c.omega = {re, im};
  return c;
}

}  // namespace stabsim
