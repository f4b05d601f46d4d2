// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "stabsim/compute.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "stabsim/errors.hpp"

namespace stabsim {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STABSIM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

double compute_model_cost(const CompressedTask& task) {
  return std::ldexp(1.0, static_cast<int>(task.t_prime - task.r_prime)) * static_cast<double>(task.t_prime);
}

namespace {

constexpr std::uint64_t kChunks = 1024;
constexpr std::uint64_t kKahanThreshold = std::uint64_t{1} << 24;

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Qubits sharing an angle; cos^a sin^b comes from per-class power tables.
struct AngleClass {
  std::vector<Word> mask;
  std::vector<double> cos_pow, sin_pow;
};

std::vector<AngleClass> angle_classes(const std::vector<double>& phases, std::size_t nw) {
  std::vector<AngleClass> out;
  std::vector<double> angles;
  for (std::size_t q = 0; q < phases.size(); ++q) {
    std::size_t k = 0;
    while (k < angles.size() && angles[k] != phases[q]) ++k;
    if (k == angles.size()) {
      angles.push_back(phases[q]);
      out.push_back({std::vector<Word>(nw, 0), {}, {}});
    }
    out[k].mask[q >> 6] |= Word{1} << (q & 63);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::size_t size = 0;
    for (Word m : out[k].mask) size += static_cast<std::size_t>(std::popcount(m));
    double c = std::cos(angles[k]), s = std::sin(angles[k]);
    out[k].cos_pow.assign(size + 1, 1.0);
    out[k].sin_pow.assign(size + 1, 1.0);
    for (std::size_t i = 1; i <= size; ++i) {
      out[k].cos_pow[i] = out[k].cos_pow[i - 1] * c;
      out[k].sin_pow[i] = out[k].sin_pow[i - 1] * s;
    }
  }
  return out;
}

template <std::size_t NW>
struct Word_P {
  std::array<Word, NW> x{}, z{};
  unsigned phase = 0;

  void mul(const Word_P& b) {
    unsigned cnt = 0;
    for (std::size_t i = 0; i < NW; ++i) {
      cnt += static_cast<unsigned>(std::popcount(z[i] & b.x[i]));
      x[i] ^= b.x[i];
      z[i] ^= b.z[i];
    }
    phase = (phase + b.phase + 2 * cnt) & 3;
  }
};

template <std::size_t NW>
struct Kernel {
  std::vector<Word_P<NW>> gens;
  std::vector<AngleClass> classes;

  double term(const Word_P<NW>& p) const {
    unsigned ys = 0;
    for (std::size_t i = 0; i < NW; ++i) {
      if (p.z[i] & ~p.x[i]) return 0.0;
      ys += static_cast<unsigned>(std::popcount(p.x[i] & p.z[i]));
    }
    double v = (((p.phase + ys) >> 1) & 1) ? -1.0 : 1.0;
    for (const auto& cl : classes) {
      unsigned nx = 0, ny = 0;
      for (std::size_t i = 0; i < NW; ++i) {
        nx += static_cast<unsigned>(std::popcount(p.x[i] & ~p.z[i] & cl.mask[i]));
        ny += static_cast<unsigned>(std::popcount(p.x[i] & p.z[i] & cl.mask[i]));
      }
      v *= cl.cos_pow[nx] * cl.sin_pow[ny];
    }
    return v;
  }

  double chunk(std::uint64_t begin, std::uint64_t end, bool compensated) const {
    Word_P<NW> p;
    std::uint64_t g = gray_code(begin);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((g >> i) & 1) p.mul(gens[i]);
    Kahan acc;
    double plain = 0.0;
    for (std::uint64_t j = begin;;) {
      double v = term(p);
      if (compensated) acc.add(v); else plain += v;
      if (++j == end) break;
      p.mul(gens[gray_flip_index(j)]);
    }
    return compensated ? acc.sum : plain;
  }
};

template <std::size_t NW>
double run(const CompressedTask& task, unsigned threads, std::uint64_t terms) {
  Kernel<NW> k;
  for (const auto& row : task.g.rows) {
    Word_P<NW> p;
    for (std::size_t i = 0; i < row.x.size(); ++i) {
      p.x[i] = row.x[i];
      p.z[i] = row.z[i];
    }
    p.phase = row.phase & 3;
    k.gens.push_back(p);
  }
  k.classes = angle_classes(task.phases, NW);

  const std::uint64_t chunks = std::min(terms, kChunks);
  const std::uint64_t per = terms / chunks;
  const bool compensated = terms > kKahanThreshold;
  std::vector<double> partial(chunks, 0.0);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;)
      partial[c] = k.chunk(c * per, (c + 1) * per, compensated);
  };
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Kahan total;
  for (double v : partial) total.add(v);
  return total.sum;
}

}  // namespace

ComputeResult compute_probability(const CompressedTask& task, const ComputeOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t k = task.t_prime - task.r_prime;
  STABSIM_CHECK(task.g.size() == k, "generator count does not match t'-r'");
  if (k > opt.cap || k > 62)
    throw InfeasibleError("compute: t'-r' = " + std::to_string(k) + " exceeds cap " + std::to_string(opt.cap),
                          compute_model_cost(task));
  const std::uint64_t terms = std::uint64_t{1} << k;
  const unsigned threads = resolve_threads(opt.threads);
  double sum = 0.0;
  switch (num_words(task.t_prime)) {
    case 0:
    case 1: sum = run<1>(task, threads, terms); break;
    case 2: sum = run<2>(task, threads, terms); break;
    case 3: sum = run<3>(task, threads, terms); break;
    case 4: sum = run<4>(task, threads, terms); break;
    default: throw InfeasibleError("compute: t' above 256", compute_model_cost(task));
  }
  ComputeResult res;
  res.p = std::ldexp(sum, static_cast<int>(task.v) - static_cast<int>(task.w));
  res.terms = terms;
  res.t_prime = task.t_prime;
  res.r_prime = task.r_prime;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace stabsim
