// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/pauli.hpp"

#include <cmath>
#include <stdexcept>

#include "stabsim/circuit.hpp"

namespace stabsim {

bool PauliOperator::is_identity_mask() const {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] | z[i]) return false;
  return true;
}

std::size_t PauliOperator::y_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) c += static_cast<std::size_t>(std::popcount(x[i] & z[i]));
  return c;
}

PauliOperator PauliOperator::parse(const std::string& text) {
  std::size_t pos = 0;
  unsigned ph = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') ph = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    ph += 1;
    ++pos;
  }
  std::string letters = text.substr(pos);
  PauliOperator p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) {
    switch (letters[q]) {
      case 'I': case '_': break;
      case 'X': p.set_x(q, true); break;
      case 'Z': p.set_z(q, true); break;
      case 'Y':
        p.set_x(q, true);
        p.set_z(q, true);
        ph += 1;
        break;
      default: throw std::invalid_argument("bad Pauli letter in '" + text + "'");
    }
  }
  p.phase = ph & 3;
  return p;
}

std::string PauliOperator::str() const {
  // Report the coefficient relative to the Y-letter form.
  unsigned rel = (phase + 4 - (y_count() & 3)) & 3;
  static const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[rel];
  for (std::size_t q = 0; q < n; ++q) {
    bool a = xbit(q), b = zbit(q);
    out += a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
  }
  return out;
}

void mul_right(PauliOperator& a, const PauliOperator& b) {
  if (a.n != b.n) throw std::invalid_argument("pauli_mul: qubit count mismatch");
  std::size_t anti = 0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    anti += static_cast<std::size_t>(std::popcount(a.z[i] & b.x[i]));
    a.x[i] ^= b.x[i];
    a.z[i] ^= b.z[i];
  }
  a.phase = static_cast<unsigned>((a.phase + b.phase + 2 * anti) & 3);
}

PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator r = a;
  mul_right(r, b);
  return r;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    c += static_cast<std::size_t>(std::popcount((a.x[i] & b.z[i]) ^ (a.z[i] & b.x[i])));
  return (c & 1) == 0;
}

void conj_h(PauliOperator& p, std::size_t q) {
  bool a = p.xbit(q), b = p.zbit(q);
  if (a && b) p.phase = (p.phase + 2) & 3;
  p.set_x(q, b);
  p.set_z(q, a);
}

void conj_s(PauliOperator& p, std::size_t q) {
  if (p.xbit(q)) {
    p.phase = (p.phase + 1) & 3;
    p.flip_z(q);
  }
}

void conj_cx(PauliOperator& p, std::size_t c, std::size_t t) {
  if (p.xbit(c)) p.flip_x(t);
  if (p.zbit(t)) p.flip_z(c);
}

void conj_cz(PauliOperator& p, std::size_t a, std::size_t b) {
  bool xa = p.xbit(a), xb = p.xbit(b);
  if (xb) p.flip_z(a);
  if (xa) p.flip_z(b);
  if (xa && xb) p.phase = (p.phase + 2) & 3;
}

std::string GeneratingSet::ascii() const {
  std::string out;
  for (const auto& r : rows) {
    out += r.sign() < 0 ? "- " : "+ ";
    for (std::size_t q = 0; q < n; ++q) out += r.xbit(q) ? '1' : '0';
    out += '|';
    for (std::size_t q = 0; q < n; ++q) out += r.zbit(q) ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

// Column-major sign tableau, so each gate touches a few row-bitsets.
struct ColumnTableau {
  std::size_t m, rw;
  std::vector<Word> xs, zs, sign;

  explicit ColumnTableau(std::size_t nq) : m(nq), rw(num_words(nq)), xs(nq * rw, 0), zs(nq * rw, 0), sign(rw, 0) {
    for (std::size_t j = 0; j < m; ++j) zs[j * rw + (j >> 6)] |= Word{1} << (j & 63);
  }
  Word* X(std::size_t q) { return &xs[q * rw]; }
  Word* Z(std::size_t q) { return &zs[q * rw]; }

  void h(std::size_t q) {
    Word *x = X(q), *z = Z(q);
    for (std::size_t i = 0; i < rw; ++i) {
      sign[i] ^= x[i] & z[i];
      std::swap(x[i], z[i]);
    }
  }
  void s(std::size_t q) {
    Word *x = X(q), *z = Z(q);
    for (std::size_t i = 0; i < rw; ++i) {
      sign[i] ^= x[i] & z[i];
      z[i] ^= x[i];
    }
  }
  void cx(std::size_t c, std::size_t t) {
    Word *xc = X(c), *zc = Z(c), *xt = X(t), *zt = Z(t);
    for (std::size_t i = 0; i < rw; ++i) {
      sign[i] ^= xc[i] & zt[i] & ~(xt[i] ^ zc[i]);
      xt[i] ^= xc[i];
      zc[i] ^= zt[i];
    }
  }
  void cz(std::size_t a, std::size_t b) {
    Word *xa = X(a), *za = Z(a), *xb = X(b), *zb = Z(b);
    for (std::size_t i = 0; i < rw; ++i) {
      sign[i] ^= xa[i] & xb[i] & (za[i] ^ zb[i]);
      za[i] ^= xb[i];
      zb[i] ^= xa[i];
    }
  }
};

}  // namespace

GeneratingSet evolve_z_generators(const Circuit& v) {
  ColumnTableau tab(v.n);
  for (const Gate& g : v.gates) {
    switch (g.kind) {
      case GateKind::H: tab.h(g.q0); break;
      case GateKind::S: tab.s(g.q0); break;
      case GateKind::CX: tab.cx(g.q0, g.q1); break;
      case GateKind::CZ: tab.cz(g.q0, g.q1); break;
      case GateKind::T: throw std::invalid_argument("evolve_z_generators: non-Clifford gate");
    }
  }
  GeneratingSet out(v.n);
  out.rows.assign(v.n, PauliOperator(v.n));
  for (std::size_t q = 0; q < v.n; ++q) {
    const Word* x = tab.X(q);
    const Word* z = tab.Z(q);
    for (std::size_t w = 0; w < tab.rw; ++w) {
      Word bx = x[w], bz = z[w];
      Word both = bx | bz;
      while (both) {
        std::size_t r = w * 64 + static_cast<std::size_t>(std::countr_zero(both));
        both &= both - 1;
        if ((bx >> (r & 63)) & 1) out.rows[r].set_x(q, true);
        if ((bz >> (r & 63)) & 1) out.rows[r].set_z(q, true);
      }
    }
  }
  for (std::size_t r = 0; r < v.n; ++r) {
    bool neg = (tab.sign[r >> 6] >> (r & 63)) & 1;
    out.rows[r].phase = static_cast<unsigned>((2 * (neg ? 1 : 0) + out.rows[r].y_count()) & 3);
  }
  return out;
}

ZxPivots to_zx_form(GeneratingSet& g, std::size_t j) {
  ZxPivots piv;
  const std::size_t k = g.rows.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!g.rows[i].xbit(j)) continue;
    if (piv.xrow < 0) {
      piv.xrow = static_cast<long>(i);
    } else {
      mul_right(g.rows[i], g.rows[static_cast<std::size_t>(piv.xrow)]);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (static_cast<long>(i) == piv.xrow || !g.rows[i].zbit(j)) continue;
    if (piv.zrow < 0) {
      piv.zrow = static_cast<long>(i);
    } else {
      mul_right(g.rows[i], g.rows[static_cast<std::size_t>(piv.zrow)]);
    }
  }
  if (piv.xrow >= 0 && piv.zrow >= 0 && g.rows[static_cast<std::size_t>(piv.xrow)].zbit(j))
    mul_right(g.rows[static_cast<std::size_t>(piv.xrow)], g.rows[static_cast<std::size_t>(piv.zrow)]);
  return piv;
}

std::size_t gf2_rank(const GeneratingSet& g) {
  const std::size_t nw = num_words(g.n);
  std::vector<std::vector<Word>> m;
  m.reserve(g.rows.size());
  for (const auto& r : g.rows) {
    std::vector<Word> row(2 * nw);
    for (std::size_t i = 0; i < nw; ++i) {
      row[i] = r.x[i];
      row[nw + i] = r.z[i];
    }
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * g.n && rank < m.size(); ++col) {
    std::size_t w = (col < g.n) ? (col >> 6) : nw + ((col - g.n) >> 6);
    Word bit = Word{1} << ((col < g.n ? col : col - g.n) & 63);
    std::size_t piv = rank;
    while (piv < m.size() && !(m[piv][w] & bit)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != rank && (m[i][w] & bit))
        for (std::size_t k = 0; k < 2 * nw; ++k) m[i][k] ^= m[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool pairwise_commuting(const GeneratingSet& g) {
  for (std::size_t i = 0; i < g.rows.size(); ++i)
    for (std::size_t k = i + 1; k < g.rows.size(); ++k)
      if (!commutes(g.rows[i], g.rows[k])) return false;
  return true;
}

double magic_expectation(const PauliOperator& p, const std::vector<double>& phases) {
  if (!p.is_hermitian()) throw std::invalid_argument("magic_expectation: non-Hermitian Pauli");
  if (phases.size() != p.n) throw std::invalid_argument("magic_expectation: phase count mismatch");
  double val = 1.0;
  std::size_t ys = 0;
  for (std::size_t q = 0; q < p.n; ++q) {
    bool a = p.xbit(q), b = p.zbit(q);
    if (!a && b) return 0.0;
    if (a && !b) val *= std::cos(phases[q]);
    if (a && b) {
      val *= std::sin(phases[q]);
      ++ys;
    }
  }
  // i^phase (i sin)^ys: Hermitian means phase + ys is even.
  return (((p.phase + ys) >> 1) & 1) ? -val : val;
}

}  // namespace stabsim
