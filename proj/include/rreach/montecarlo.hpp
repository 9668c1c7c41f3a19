#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rreach/fit.hpp"
#include "rreach/parallel.hpp"
#include "rreach/propagation.hpp"

namespace rreach {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// xoshiro256** seeded from a splitmix64 stream.
struct Xoshiro256 {
  std::uint64_t s[4];

  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s) {
      word = splitmix64(sm);
      sm += 0x9E3779B97F4A7C15ULL;
    }
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  // uniform in [0, bound) by the multiply-shift reduction
  std::uint64_t bounded(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }
};

// Stream seed for one trial: the splitmix64 output at offset `trial` of the
// stream anchored at `seed`. This is the documented (seed, trial) mix.
inline std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed + trial * 0x9E3779B97F4A7C15ULL);
}

}  // namespace detail

enum class McModel { bernoulli, random_string };

inline const char* mc_model_name(McModel m) {
  return m == McModel::bernoulli ? "bernoulli" : "string";
}

struct McConfig {
  McModel model = McModel::bernoulli;
  int k = 2;
  int r = 1;
  long n_max = 1000;
  long trials = 10000;
  std::uint64_t seed = 1;
  long fit_n_min = 50;
  long fit_n_max = 1000;
};

// Per-n exact integer sums of R(n,n) across trials. One lattice is reused per
// trial for every n <= n_max (the diagonal is recorded in a single sweep),
// exactly as in the source protocol; values at different n within one trial
// are therefore correlated, which the extrapolation tolerates.
struct McCurve {
  McConfig config;
  std::vector<std::uint64_t> sum_lengths;     // index n-1
  std::vector<std::uint64_t> sum_sq_lengths;  // for the standard error

  double mean(long n) const {
    return static_cast<double>(sum_lengths[static_cast<std::size_t>(n - 1)]) /
           static_cast<double>(config.trials);
  }

  double stderr_mean(long n) const {
    const double t = static_cast<double>(config.trials);
    if (t < 2) return 0.0;
    const double s1 = static_cast<double>(sum_lengths[static_cast<std::size_t>(n - 1)]);
    const double s2 = static_cast<double>(sum_sq_lengths[static_cast<std::size_t>(n - 1)]);
    const double var = (s2 - s1 * s1 / t) / (t - 1);
    return var <= 0.0 ? 0.0 : std::sqrt(var / t);
  }
};

// Seeded Monte Carlo estimate of EL_{n,k,r} (random_string) or EL^B_{n,k,r}
// (bernoulli) for every n <= n_max. Each trial draws its own RNG stream from
// (seed, trial index) only, so the aggregate is independent of scheduling;
// per-n accumulators are exact integer sums.
inline McCurve run_trials(const McConfig& config, unsigned threads = default_thread_count()) {
  if (config.trials < 1 || config.n_max < 1)
    throw std::invalid_argument("need trials >= 1 and n_max >= 1");
  if (config.k < 2 || config.r < 1) throw std::invalid_argument("need k >= 2 and r >= 1");

  const long n = config.n_max;
  const long r = config.r;
  const std::uint64_t k = static_cast<std::uint64_t>(config.k);
  McCurve curve{config,
                std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0),
                std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0)};

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(threads == 0 ? 1 : threads,
                                                    static_cast<std::uint64_t>(config.trials)));
  std::vector<std::vector<std::uint64_t>> part_sum(workers), part_sq(workers);

  const std::size_t chunk =
      (static_cast<std::size_t>(config.trials) + workers - 1) / workers;
  parallel_chunks(static_cast<std::size_t>(config.trials), workers,
                  [&](std::size_t lo, std::size_t hi) {
    const std::size_t w = lo / chunk;
    auto& sums = part_sum[w];
    auto& sqs = part_sq[w];
    sums.assign(static_cast<std::size_t>(n), 0);
    sqs.assign(static_cast<std::size_t>(n), 0);

    const long width = 2 * r + 1;
    std::vector<long> prev(static_cast<std::size_t>(width)), cur(prev);
    std::vector<int> u, v;
    for (std::size_t trial = lo; trial < hi; ++trial) {
      detail::Xoshiro256 rng(detail::trial_stream_seed(config.seed, trial));
      if (config.model == McModel::random_string) {
        u.resize(static_cast<std::size_t>(n));
        v.resize(static_cast<std::size_t>(n));
        for (auto& s : u) s = static_cast<int>(rng.bounded(k));
        for (auto& s : v) s = static_cast<int>(rng.bounded(k));
      }
      std::fill(prev.begin(), prev.end(), 0);
      for (long i = 1; i <= n; ++i) {
        const long olo = std::max(0L, r - i + 1), ohi = std::min(width - 1, n - i + r);
        for (long o = 0; o < olo; ++o) cur[o] = 0;
        for (long o = olo; o <= ohi; ++o) {
          const long j = i + o - r;
          const bool eps = config.model == McModel::bernoulli
                               ? rng.bounded(k) == 0
                               : u[static_cast<std::size_t>(i - 1)] ==
                                     v[static_cast<std::size_t>(j - 1)];
          long val;
          if (eps)
            val = prev[o] + 1;
          else if (o == 0)
            val = prev[1];
          else if (o == width - 1)
            val = cur[o - 1];
          else
            val = std::max(cur[o - 1], prev[o + 1]);
          cur[o] = val;
        }
        for (long o = ohi + 1; o < width; ++o) cur[o] = 0;
        const std::uint64_t diag = static_cast<std::uint64_t>(cur[r]);
        sums[static_cast<std::size_t>(i - 1)] += diag;
        sqs[static_cast<std::size_t>(i - 1)] += diag * diag;
        std::swap(prev, cur);
      }
    }
  });

  for (unsigned w = 0; w < workers; ++w) {
    if (part_sum[w].empty()) continue;
    for (std::size_t t = 0; t < static_cast<std::size_t>(n); ++t) {
      curve.sum_lengths[t] += part_sum[w][t];
      curve.sum_sq_lengths[t] += part_sq[w][t];
    }
  }
  return curve;
}

inline FitResult fit_extrapolation(const McCurve& curve, long n_min, long n_max) {
  if (n_min < 1 || n_min >= n_max || n_max > curve.config.n_max)
    throw std::invalid_argument("fit window must satisfy 1 <= n_min < n_max <= n_max(curve)");
  std::vector<long> ns;
  std::vector<double> u;
  for (long n = n_min; n <= n_max; ++n) {
    ns.push_back(n);
    u.push_back(curve.mean(n) / static_cast<double>(n));
  }
  return fit_affine(ns, u);
}

// S_r = (1/N) sum_{n=1..N} (mc_mean(n)/n - exact_n/n)^2 with N = n_max of the
// Monte Carlo curve.
inline double s_statistic(const McCurve& curve, const ExactCurve& exact) {
  const bool model_match =
      (curve.config.model == McModel::bernoulli && exact.model == ChainModel::bernoulli) ||
      (curve.config.model == McModel::random_string &&
       exact.model == ChainModel::string_augmented);
  if (!model_match || curve.config.k != exact.k || curve.config.r != exact.r)
    throw std::invalid_argument("curves disagree on (model, k, r)");
  if (exact.n_max() < curve.config.n_max)
    throw std::invalid_argument("exact curve does not cover the Monte Carlo window");
  double acc = 0.0;
  const long n_max = curve.config.n_max;
  for (long n = 1; n <= n_max; ++n) {
    const double d = curve.mean(n) / static_cast<double>(n) -
                     to_double(exact.at(n) / Rational(n));
    acc += d * d;
  }
  return acc / static_cast<double>(n_max);
}

}  // namespace rreach
