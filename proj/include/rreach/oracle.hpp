#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rreach/config.hpp"
#include "rreach/errors.hpp"
#include "rreach/lattice.hpp"
#include "rreach/numeric.hpp"
#include "rreach/parallel.hpp"
#include "rreach/string_model.hpp"

namespace rreach {

// Brute-force ground truth. Nothing here is clever; the value of this module
// is its obvious correctness.

struct OracleResult {
  int k = 2;
  long n = 0;
  std::optional<int> r;  // nullopt = unrestricted
  Rational expectation;
  std::uint64_t enumeration_count = 0;
};

namespace detail {

inline std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (unsigned t = 0; t < exp; ++t) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

inline void decode_base_k(std::uint64_t index, int k, std::vector<int>& out) {
  for (auto& s : out) {
    s = static_cast<int>(index % static_cast<std::uint64_t>(k));
    index /= static_cast<std::uint64_t>(k);
  }
}

inline long pair_length(const std::vector<int>& u, const std::vector<int>& v, long n,
                        std::optional<int> r) {
  if (!r) {
    // plain LCS over the full lattice
    static thread_local std::vector<long> prev, cur;
    prev.assign(static_cast<std::size_t>(n) + 1, 0);
    cur.assign(static_cast<std::size_t>(n) + 1, 0);
    for (long i = 1; i <= n; ++i) {
      for (long j = 1; j <= n; ++j) {
        if (u[i - 1] == v[j - 1])
          cur[j] = prev[j - 1] + 1;
        else
          cur[j] = std::max(cur[j - 1], prev[j]);
      }
      std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(n)];
  }
  long length = 0;
  banded_sweep(
      n, *r, [&](long i, long j) { return u[i - 1] == v[j - 1]; },
      [&](long, long d) { length = d; });
  return length;
}

}  // namespace detail

// Exact average of L(u,v) (r = nullopt) or L_r(u,v) over all k^{2n} ordered
// string pairs.
inline OracleResult string_expectation(int k, long n, std::optional<int> r,
                                       unsigned threads = default_thread_count()) {
  if (k < 2 || n < 1) throw std::invalid_argument("need k >= 2, n >= 1");
  if (r && *r < 1) throw std::invalid_argument("reach must be at least 1");
  const std::uint64_t cap = max_string_enumeration();
  const std::uint64_t per_string =
      detail::checked_pow_u64(static_cast<std::uint64_t>(k), static_cast<unsigned>(n), cap);
  if (per_string > cap || per_string > cap / per_string)
    throw ResourceLimitError("k^(2n) exceeds the enumeration cap RREACH_MAX_ENUM=" +
                             std::to_string(cap));
  const std::uint64_t total = per_string * per_string;

  std::vector<std::uint64_t> partial(threads == 0 ? 1 : threads, 0);
  const unsigned workers = static_cast<unsigned>(partial.size());
  const std::size_t chunk = (static_cast<std::size_t>(per_string) + workers - 1) / workers;
  parallel_chunks(static_cast<std::size_t>(per_string), workers,
                  [&](std::size_t lo, std::size_t hi) {
    std::vector<int> u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    std::uint64_t acc = 0;
    for (std::size_t iu = lo; iu < hi; ++iu) {
      detail::decode_base_k(iu, k, u);
      for (std::uint64_t iv = 0; iv < per_string; ++iv) {
        detail::decode_base_k(iv, k, v);
        acc += static_cast<std::uint64_t>(detail::pair_length(u, v, n, r));
      }
    }
    partial[lo / chunk] += acc;
  });
  std::uint64_t sum = 0;
  for (auto p : partial) sum += p;

  OracleResult out;
  out.k = k;
  out.n = n;
  out.r = r;
  out.expectation = make_rational(BigInt(sum), BigInt(total));
  out.enumeration_count = total;
  return out;
}

// Exact sum over all banded epsilon assignments of weight * R(n,n), with
// weight (1/k)^{ones} ((k-1)/k)^{zeros}.
inline OracleResult bernoulli_expectation(int k, long n, int r,
                                          unsigned threads = default_thread_count()) {
  if (k < 2 || n < 1 || r < 1) throw std::invalid_argument("need k >= 2, n >= 1, r >= 1");
  int cells = 0;
  std::vector<int> row_base(static_cast<std::size_t>(n) + 1, 0);
  for (long i = 1; i <= n; ++i) {
    row_base[static_cast<std::size_t>(i)] = cells;
    cells += static_cast<int>(std::min(n, i + static_cast<long>(r)) -
                              std::max(1L, i - static_cast<long>(r)) + 1);
  }
  if (cells > max_band_cells())
    throw ResourceLimitError("band has " + std::to_string(cells) +
                             " cells; enumeration cap RREACH_MAX_BAND_CELLS=" +
                             std::to_string(max_band_cells()));

  const std::uint64_t total = std::uint64_t{1} << cells;
  std::vector<std::uint64_t> miss_pow(static_cast<std::size_t>(cells) + 1);
  miss_pow[0] = 1;
  bool fits_u64 = true;
  for (std::size_t t = 1; t < miss_pow.size(); ++t) {
    if (miss_pow[t - 1] > std::numeric_limits<std::uint64_t>::max() /
                              static_cast<std::uint64_t>(k - 1) / 32u) {
      fits_u64 = false;
      break;
    }
    miss_pow[t] = miss_pow[t - 1] * static_cast<std::uint64_t>(k - 1);
  }
  if (!fits_u64)
    throw ResourceLimitError("(k-1)^cells too large for the enumeration accumulator");

  const unsigned workers = threads == 0 ? 1 : threads;
  std::vector<BigInt> partial(workers);
  const std::size_t chunk = (static_cast<std::size_t>(total) + workers - 1) / workers;
  parallel_chunks(static_cast<std::size_t>(total), workers, [&](std::size_t lo, std::size_t hi) {
    BigInt local(0);
    unsigned __int128 acc = 0;
    std::size_t since_flush = 0;
    for (std::size_t mask = lo; mask < hi; ++mask) {
      long length = 0;
      banded_sweep(
          n, r,
          [&](long i, long j) {
            const int bit = row_base[static_cast<std::size_t>(i)] +
                            static_cast<int>(j - std::max(1L, i - static_cast<long>(r)));
            return (mask >> bit) & 1u;
          },
          [&](long, long d) { length = d; });
      acc += static_cast<unsigned __int128>(
                 miss_pow[static_cast<std::size_t>(cells - __builtin_popcountll(mask))]) *
             static_cast<unsigned __int128>(length);
      if (++since_flush == 1u << 16) {
        local += BigInt(static_cast<std::uint64_t>(acc >> 64)) * int_pow(BigInt(2), 64) +
                 BigInt(static_cast<std::uint64_t>(acc));
        acc = 0;
        since_flush = 0;
      }
    }
    local += BigInt(static_cast<std::uint64_t>(acc >> 64)) * int_pow(BigInt(2), 64) +
             BigInt(static_cast<std::uint64_t>(acc));
    partial[lo / chunk] = local;
  });
  BigInt sum(0);
  for (const auto& p : partial) sum += p;

  OracleResult out;
  out.k = k;
  out.n = n;
  out.r = r;
  out.expectation = make_rational(sum, int_pow(BigInt(k), static_cast<unsigned long>(cells)));
  out.enumeration_count = total;
  return out;
}

struct CensusSummary {
  long n = 0;
  std::uint64_t configurations = 0;
  std::uint64_t weight2 = 0;
  std::uint64_t weight0 = 0;
  bool consistent = false;
};

// Enumerates every banded epsilon assignment (r = 1, k = 2), counts its
// realizing string pairs by brute force, and checks the count is exactly 2
// when every 2x2 window sum is in {0, 2, 4} and exactly 0 otherwise.
inline CensusSummary realizability_census(long n, unsigned threads = default_thread_count()) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (n > 5) throw ResourceLimitError("realizability census is capped at n <= 5");
  const int cells = static_cast<int>(3 * n - 2);
  const std::uint64_t configs = std::uint64_t{1} << cells;
  const std::uint64_t pairs = std::uint64_t{1} << (2 * n);

  std::vector<int> row_base(static_cast<std::size_t>(n) + 1, 0);
  int c = 0;
  for (long i = 1; i <= n; ++i) {
    row_base[static_cast<std::size_t>(i)] = c;
    c += static_cast<int>(std::min(n, i + 1) - std::max(1L, i - 1) + 1);
  }

  const unsigned workers = threads == 0 ? 1 : threads;
  std::vector<std::uint64_t> w2(workers, 0), w0(workers, 0);
  const std::size_t chunk = (static_cast<std::size_t>(configs) + workers - 1) / workers;
  parallel_chunks(static_cast<std::size_t>(configs), workers,
                  [&](std::size_t lo, std::size_t hi) {
    EpsilonBand band(n, 1);
    for (std::size_t mask = lo; mask < hi; ++mask) {
      for (long i = 1; i <= n; ++i)
        for (long j = std::max(1L, i - 1); j <= std::min(n, i + 1); ++j)
          band.set(i, j,
                   (mask >> (row_base[static_cast<std::size_t>(i)] +
                             static_cast<int>(j - std::max(1L, i - 1)))) &
                       1u);

      std::uint64_t count = 0;
      for (std::uint64_t p = 0; p < pairs; ++p) {
        bool match = true;
        for (long i = 1; i <= n && match; ++i) {
          const int ui = static_cast<int>((p >> (i - 1)) & 1u);
          for (long j = std::max(1L, i - 1); j <= std::min(n, i + 1) && match; ++j) {
            const int vj = static_cast<int>((p >> (n + j - 1)) & 1u);
            if ((ui == vj ? 1 : 0) != band.at(i, j)) match = false;
          }
        }
        if (match) ++count;
      }

      const long predicted = realizability_weight(band);
      if (count != static_cast<std::uint64_t>(predicted))
        throw InternalCheckError("window criterion contradicts brute force at n=" +
                                 std::to_string(n) + ", config=" + std::to_string(mask) +
                                 ": counted " + std::to_string(count) + ", predicted " +
                                 std::to_string(predicted));
      (count == 2 ? w2 : w0)[lo / chunk] += 1;
    }
  });

  CensusSummary out;
  out.n = n;
  out.configurations = configs;
  for (unsigned w = 0; w < workers; ++w) {
    out.weight2 += w2[w];
    out.weight0 += w0[w];
  }
  out.consistent = out.weight2 + out.weight0 == configs;
  return out;
}

}  // namespace rreach
