// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/rawestim.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "stabsim/compute.hpp"
#include "stabsim/errors.hpp"

namespace stabsim {

namespace {
const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
constexpr std::uint64_t kChunk = 1024;

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
void parallel_chunks(std::uint64_t chunks, unsigned threads, F&& body) {
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) body(c);
  };
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}
}  // namespace

MagicDecomposition MagicDecomposition::from_phases(const std::vector<double>& phases) {
  MagicDecomposition d;
  const cplx one_plus_i(1.0, 1.0);
  for (double phi : phases) {
    if (!(phi > 0.0 && phi < std::numbers::pi / 2)) throw std::invalid_argument("magic decomposition: angle outside (0, pi/2)");
    const cplx e = std::polar(1.0, -phi);
    cplx a = (cplx(0, 1) + e) / one_plus_i;
    cplx ap = (1.0 - e) / one_plus_i;
    d.phi.push_back(phi);
    d.alpha.push_back(a);
    d.alpha_p.push_back(ap);
    d.q1.push_back(std::abs(ap) / (std::abs(a) + std::abs(ap)));
    d.xi.push_back(extent(phi));
    d.xi_total *= d.xi.back();
  }
  return d;
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 a(master);
  std::uint64_t h = a() ^ (index * 0xd1b54a32d192ed03ULL);
  SplitMix64 b(h);
  return b();
}

cplx equatorial_amplitude(const EquatorialState& theta, Word x) {
  unsigned q = 0;
  for (std::size_t j = 0; j < theta.r; ++j) {
    if (!((x >> j) & 1)) continue;
    q += theta.at(j, j);
    for (std::size_t k = j + 1; k < theta.r; ++k)
      if ((x >> k) & 1) q += 2 * theta.at(j, k);
  }
  return kIPow[q & 3] * std::ldexp(1.0, -static_cast<int>(theta.r / 2)) *
         ((theta.r & 1) ? std::numbers::sqrt2 / 2 : 1.0);
}

RawEstimator::RawEstimator(const CompressedTask& task) : task_(task) {
  if (task_.t_prime > kChMaxQubits) throw InfeasibleError("rawestim: t' above 64 is not supported", 0.0);
  STABSIM_CHECK(task_.phases.size() == task_.t_prime, "phase list does not match t'");
  dec_ = MagicDecomposition::from_phases(task_.phases);
  k_ = task_.t_prime - task_.r_prime;
  scale_ = std::sqrt(dec_.xi_total) * std::sqrt(std::ldexp(1.0, static_cast<int>(task_.exponent())));

  base_ = CHForm(task_.t_prime);
  for (std::size_t q = 0; q < task_.t_prime; ++q) base_.left_h(q);
  base_.apply_left(task_.W);
  GeneratingSet zs = evolve_z_generators(task_.W);
  pk_ = zs.rows;

  if (task_.t_prime <= 14 && task_.r_prime <= 10 && task_.t_prime + task_.r_prime <= 20) {
    table_.resize(std::size_t{1} << task_.t_prime);
    for (Word y = 0; y < table_.size(); ++y) table_[y] = dense_psi(y);
  }
}

Word RawEstimator::sample_y(SplitMix64& rng) const {
  Word y = 0;
  for (std::size_t j = 0; j < dec_.q1.size(); ++j)
    if (rng.uniform() < dec_.q1[j]) y |= Word{1} << j;
  return y;
}

CHForm RawEstimator::prepare_psi(Word y) const {
  CHForm c = base_;
  cplx phase = 1.0;
  for (std::size_t j = 0; j < dec_.phi.size(); ++j) {
    const cplx a = ((y >> j) & 1) ? dec_.alpha_p[j] : dec_.alpha[j];
    phase *= a / std::abs(a);
  }
  for (Word m = y; m; m &= m - 1) c.apply_one_plus_i_pauli(pk_[static_cast<std::size_t>(std::countr_zero(m))]);
  c.project_zero_prefix(k_);
  for (std::size_t i = 0; i < k_; ++i) c.discard_leading_zero_qubit();
  c.omega *= scale_ * phase;
  return c;
}

std::vector<cplx> RawEstimator::dense_psi(Word y) const { return prepare_psi(y).statevector(); }

RawEstimResult RawEstimator::run(std::uint64_t s, std::uint64_t L, std::uint64_t seed, const RawEstimOptions& opt) const {
  if (s < 1 || L < 1) throw std::invalid_argument("rawestim: s and L must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const double tp = static_cast<double>(task_.t_prime), rp = static_cast<double>(task_.r_prime);
  const double work = static_cast<double>(s) * tp * tp * tp + static_cast<double>(s) * static_cast<double>(L) * rp * rp * rp;
  if (work > opt.work_cap) throw InfeasibleError("rawestim: work above cap", work);

  const std::size_t r = task_.r_prime;
  const unsigned threads = resolve_threads(opt.threads);
  const std::uint64_t chunks = (s + kChunk - 1) / kChunk;
  const double bound = dec_.xi_total * (1.0 + 1e-9);

  RawEstimResult res;
  res.s = s;
  res.L = r == 0 ? 1 : L;
  res.seed = seed;
  res.xi_prime = dec_.xi_total;

  std::mt19937_64 theta_rng(stream_seed(seed, ~std::uint64_t{0}));
  std::vector<EquatorialState> thetas;
  if (r > 0)
    for (std::uint64_t j = 0; j < L; ++j) thetas.push_back(EquatorialState::random(r, theta_rng));

  const bool dense = r <= opt.dense_max_r;
  const std::size_t width = dense ? (std::size_t{1} << r) : thetas.size();
  std::vector<std::vector<cplx>> partial(chunks, std::vector<cplx>(width, 0.0));
  std::vector<double> chunk_max(chunks, 0.0);
  std::atomic<bool> breach{false};

  parallel_chunks(chunks, threads, [&](std::uint64_t c) {
    auto& acc = partial[c];
    const std::uint64_t end = std::min(s, (c + 1) * kChunk);
    for (std::uint64_t k = c * kChunk; k < end; ++k) {
      SplitMix64 rng(stream_seed(seed, k));
      const Word y = sample_y(rng);
      if (dense) {
        std::vector<cplx> local;
        const std::vector<cplx>* psi;
        if (!table_.empty()) {
          psi = &table_[y];
        } else {
          local = dense_psi(y);
          psi = &local;
        }
        double n2 = 0;
        for (std::size_t i = 0; i < width; ++i) {
          acc[i] += (*psi)[i];
          n2 += std::norm((*psi)[i]);
        }
        chunk_max[c] = std::max(chunk_max[c], n2);
        if (n2 > bound) breach = true;
      } else {
        CHForm psi = prepare_psi(y);
        const double n2 = std::norm(psi.omega);
        chunk_max[c] = std::max(chunk_max[c], n2);
        if (n2 > bound) breach = true;
        for (std::size_t j = 0; j < thetas.size(); ++j) acc[j] += psi.inner_product_equatorial(thetas[j]);
      }
    }
  });
  for (double m : chunk_max) res.max_norm2 = std::max(res.max_norm2, m);
  if (breach) throw InvariantError("rawestim: sampled norm above the total extent");
  res.seconds_samples = elapsed(t0);

  const auto t1 = std::chrono::steady_clock::now();
  std::vector<cplx> total(width, 0.0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < width; ++i) total[i] += p[i];

  const double s2 = static_cast<double>(s) * static_cast<double>(s);
  if (r == 0) {
    res.p_hat = std::norm(total[0]) / s2;
  } else {
    double acc = 0.0;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      cplx ip = 0.0;
      if (dense) {
        for (Word x = 0; x < width; ++x) ip += std::conj(equatorial_amplitude(thetas[j], x)) * total[x];
      } else {
        ip = total[j];
      }
      acc += std::norm(ip);
    }
    res.p_hat = std::ldexp(acc, static_cast<int>(r)) / (s2 * static_cast<double>(L));
  }
  res.seconds_norm = elapsed(t1);
  res.seconds = elapsed(t0);
  return res;
}

RawEstimResult raw_estim(const CompressedTask& task, std::uint64_t s, std::uint64_t L, std::uint64_t seed,
                         const RawEstimOptions& opt) {
  return RawEstimator(task).run(s, L, seed, opt);
}

}  // namespace stabsim
