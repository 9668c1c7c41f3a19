#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rreach/config.hpp"
#include "rreach/errors.hpp"
#include "rreach/fit.hpp"
#include "rreach/lattice.hpp"
#include "rreach/parallel.hpp"
#include "rreach/string_model.hpp"
#include "rreach/transfer.hpp"

namespace rreach {

// Exact joint distribution over (z, section state) at step n.
struct SectionDistribution {
  ChainModel model;
  int k;
  int r;
  long n;
  std::size_t dim;
  std::map<long, std::vector<Rational>> support;

  Rational total_mass() const {
    Rational total(0);
    for (const auto& [z, vec] : support)
      for (const auto& q : vec) total += q;
    return total;
  }

  Rational expected_length() const {
    Rational total(0);
    for (const auto& [z, vec] : support) {
      Rational mass(0);
      for (const auto& q : vec) mass += q;
      total += Rational(z) * mass;
    }
    return total;
  }
};

namespace detail {

inline void accumulate_row(std::map<long, std::vector<Rational>>& support, long z,
                           std::vector<Rational>&& row) {
  bool any = false;
  for (const auto& q : row)
    if (q != 0) {
      any = true;
      break;
    }
  if (!any) return;
  auto it = support.find(z);
  if (it == support.end()) {
    support.emplace(z, std::move(row));
  } else {
    for (std::size_t j = 0; j < row.size(); ++j) it->second[j] += row[j];
  }
}

inline std::uint32_t encode_section(const std::vector<long>& section, int r) {
  std::uint32_t state = 0;
  for (int i = 1; i <= r; ++i) {
    const long dx = section[r - i + 1] - section[r - i];
    const long dy = section[r + i - 1] - section[r + i];
    if (dx < 0 || dx > 1 || dy < 0 || dy > 1)
      throw InternalCheckError("section decrements must be 0 or 1");
    state |= static_cast<std::uint32_t>(dx) << (2 * (r - i) + 1);
    state |= static_cast<std::uint32_t>(dy) << (2 * (r - i));
  }
  return state;
}

}  // namespace detail

// Exact distribution of the section at n = r, by enumerating every epsilon
// assignment on the full r x r square (the band covers it there) and running
// the DP on each. The simplest correct initial condition, kept for r <= 4.
inline SectionDistribution initialize_by_square_enumeration(int k, int r) {
  if (k < 2 || r < 1) throw std::invalid_argument("need k >= 2, r >= 1");
  if (r > 4)
    throw ResourceLimitError("square enumeration is 2^(r*r); use the growing-band path for r > 4");
  const int cells = r * r;
  const std::size_t dim = section_dim(r);
  const BigInt denom = int_pow(BigInt(k), static_cast<unsigned long>(cells));
  std::vector<BigInt> miss_pow(static_cast<std::size_t>(cells) + 1);
  for (std::size_t t = 0; t < miss_pow.size(); ++t)
    miss_pow[t] = int_pow(BigInt(k - 1), static_cast<unsigned long>(t));

  std::map<long, std::vector<BigInt>> acc;
  std::vector<long> section;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    banded_sweep(
        r, r,
        [&](long i, long j) { return (mask >> ((i - 1) * r + (j - 1))) & 1u; },
        [](long, long) {}, &section);
    const long z = section[static_cast<std::size_t>(r)];
    const std::uint32_t state = detail::encode_section(section, r);
    auto it = acc.find(z);
    if (it == acc.end()) it = acc.emplace(z, std::vector<BigInt>(dim)).first;
    it->second[state] += miss_pow[static_cast<std::size_t>(cells - __builtin_popcountll(mask))];
  }

  SectionDistribution dist{ChainModel::bernoulli, k, r, r, dim, {}};
  for (const auto& [z, vec] : acc) {
    std::vector<Rational> row(dim, Rational(0));
    for (std::size_t s = 0; s < dim; ++s)
      if (vec[s] != 0) row[s] = make_rational(vec[s], denom);
    dist.support.emplace(z, std::move(row));
  }
  return dist;
}

// Exact distribution of the section at n = r by propagating the full
// anti-diagonal hook from n = 1, widening it one step at a time. The boundary
// rows R(0,.) = R(.,0) = 0 break translation invariance below n = r, so the
// states here are absolute (z, decrement-bit) pairs. Optionally records
// EL_m for every intermediate width m < r.
inline SectionDistribution initialize_by_growing_band(int k, int r,
                                                      std::vector<Rational>* prefix_el = nullptr) {
  if (k < 2 || r < 1) throw std::invalid_argument("need k >= 2, r >= 1");
  if (r > max_reach())
    throw ResourceLimitError("reach r=" + std::to_string(r) +
                             " exceeds the enumeration cap RREACH_MAX_R=" +
                             std::to_string(max_reach()));
  if (prefix_el) prefix_el->clear();

  // width 1: the single cell epsilon_{11}
  std::map<long, std::vector<Rational>> cur;
  cur[0] = {make_rational(BigInt(k - 1), BigInt(k)), Rational(0), Rational(0), Rational(0)};
  cur[1] = {Rational(0), Rational(0), Rational(0), make_rational(BigInt(1), BigInt(k))};

  for (int m = 2; m <= r; ++m) {
    if (prefix_el) {
      Rational el(0);
      for (const auto& [z, vec] : cur) {
        Rational mass(0);
        for (const auto& q : vec) mass += q;
        el += Rational(z) * mass;
      }
      prefix_el->push_back(el);
    }

    const int old_m = m - 1;
    const std::size_t new_dim = section_dim(m);
    const int fresh_bits = 2 * m - 1;
    const BigInt fresh_denom = int_pow(BigInt(k), static_cast<unsigned long>(fresh_bits));
    std::vector<BigInt> miss_pow(static_cast<std::size_t>(fresh_bits) + 1);
    for (std::size_t t = 0; t < miss_pow.size(); ++t)
      miss_pow[t] = int_pow(BigInt(k - 1), static_cast<unsigned long>(t));

    std::map<long, std::vector<Rational>> next;
    std::array<long, 16> x{}, y{}, nc{}, nr{}, newx{}, newy{};
    for (const auto& [z, vec] : cur) {
      for (std::size_t s = 0; s < vec.size(); ++s) {
        if (vec[s] == 0) continue;
        x[0] = z;
        y[0] = z;
        for (int i = 1; i <= old_m; ++i) {
          x[i] = x[i - 1] - state_dx(static_cast<std::uint32_t>(s), old_m, i);
          y[i] = y[i - 1] - state_dy(static_cast<std::uint32_t>(s), old_m, i);
        }
        if (x[old_m] != 0 || y[old_m] != 0)
          throw InternalCheckError("hook states must reach the zero boundary");

        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << fresh_bits); ++mask) {
          // column (i, m) top-down, then row (m, j), then the center
          nc[0] = 0;
          for (int i = 1; i <= m - 1; ++i) {
            const bool e = (mask >> (i - 1)) & 1u;
            nc[i] = e ? x[m - i] + 1 : std::max(x[m - 1 - i], nc[i - 1]);
          }
          nr[0] = 0;
          for (int j = 1; j <= m - 1; ++j) {
            const bool e = (mask >> (m - 1 + j)) & 1u;
            nr[j] = e ? y[m - j] + 1 : std::max(y[m - 1 - j], nr[j - 1]);
          }
          const bool ec = (mask >> (m - 1)) & 1u;
          const long z_new = ec ? z + 1 : std::max(nc[m - 1], nr[m - 1]);

          newx[0] = z_new;
          newy[0] = z_new;
          for (int i = 1; i <= m - 1; ++i) {
            newx[i] = nc[m - i];
            newy[i] = nr[m - i];
          }
          newx[m] = 0;
          newy[m] = 0;
          std::uint32_t state = 0;
          for (int i = 1; i <= m; ++i) {
            const long dx = newx[i - 1] - newx[i];
            const long dy = newy[i - 1] - newy[i];
            if (dx < 0 || dx > 1 || dy < 0 || dy > 1)
              throw InternalCheckError("hook decrements must be 0 or 1");
            state |= static_cast<std::uint32_t>(dx) << (2 * (m - i) + 1);
            state |= static_cast<std::uint32_t>(dy) << (2 * (m - i));
          }

          const int zeros = fresh_bits - __builtin_popcount(mask);
          const Rational w =
              vec[s] * make_rational(miss_pow[static_cast<std::size_t>(zeros)], fresh_denom);
          auto it = next.find(z_new);
          if (it == next.end())
            it = next.emplace(z_new, std::vector<Rational>(new_dim, Rational(0))).first;
          it->second[state] += w;
        }
      }
    }
    cur = std::move(next);
  }

  SectionDistribution dist{ChainModel::bernoulli, k, r, r, section_dim(r), std::move(cur)};
  return dist;
}

inline SectionDistribution initialize_at_r(int k, int r) {
  if (r >= 1 && r <= 4) return initialize_by_square_enumeration(k, r);
  return initialize_by_growing_band(k, r);
}

// n = 1 start for the 8-state augmented chains (k = 2): the single cell is a
// match with probability 1/2, giving the on-state (z-1,z-1,z-1) at z = 1,
// else the off-state (z,z,z) at z = 0.
inline SectionDistribution initial_augmented_distribution(ChainModel model, int k) {
  if (model == ChainModel::bernoulli)
    throw std::invalid_argument("augmented initial distribution needs an augmented chain");
  if (k != 2) throw std::invalid_argument("augmented chains support k=2 only");
  SectionDistribution dist{model, k, 1, 1, 8, {}};
  std::vector<Rational> z0(8, Rational(0)), z1(8, Rational(0));
  z0[0] = frac(1, 2);
  z1[7] = frac(1, 2);
  dist.support.emplace(0, std::move(z0));
  dist.support.emplace(1, std::move(z1));
  return dist;
}

// One application of P_n(z) = P_{n-1}(z) M + P_{n-1}(z-1) N, exactly.
inline SectionDistribution step(const SectionDistribution& dist, const TransitionPair& pair) {
  if (dist.model != pair.model || dist.k != pair.k || dist.r != pair.r ||
      dist.dim != pair.dim())
    throw std::invalid_argument("distribution and transition pair disagree on the model");
  SectionDistribution out{dist.model, dist.k, dist.r, dist.n + 1, dist.dim, {}};
  for (const auto& [z, vec] : dist.support) {
    detail::accumulate_row(out.support, z, row_times_matrix(vec, pair.M));
    detail::accumulate_row(out.support, z + 1, row_times_matrix(vec, pair.N));
  }
  return out;
}

// Exact EL_n for n = 1..n_max.
struct ExactCurve {
  ChainModel model;
  int k;
  int r;
  std::vector<Rational> values;  // values[n-1] = EL_n

  long n_max() const { return static_cast<long>(values.size()); }
  const Rational& at(long n) const {
    if (n < 1 || n > n_max()) throw std::out_of_range("curve index");
    return values[static_cast<std::size_t>(n - 1)];
  }
};

// Componentwise column sums H_n = sum_z P_n(z) and first moments
// E_n = sum_z z P_n(z), as exact rationals.
struct MomentState {
  long n = 0;
  std::vector<Rational> h, e;
};

// Expected unrestricted Bernoulli length at small n, by enumerating every
// epsilon assignment of the n x n square.
inline Rational unrestricted_bernoulli_el(int k, long n) {
  if (k < 2 || n < 1) throw std::invalid_argument("need k >= 2, n >= 1");
  if (n > 5) throw ResourceLimitError("square enumeration is 2^(n*n); capped at n <= 5");
  const int cells = static_cast<int>(n * n);
  std::vector<BigInt> miss_pow(static_cast<std::size_t>(cells) + 1);
  for (std::size_t t = 0; t < miss_pow.size(); ++t)
    miss_pow[t] = int_pow(BigInt(k - 1), static_cast<unsigned long>(t));
  BigInt acc(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    long length = 0;
    banded_sweep(
        n, n, [&](long i, long j) { return (mask >> ((i - 1) * n + (j - 1))) & 1u; },
        [&](long, long d) { length = d; });
    if (length != 0)
      acc += miss_pow[static_cast<std::size_t>(cells - __builtin_popcountll(mask))] * length;
  }
  return make_rational(acc, int_pow(BigInt(k), static_cast<unsigned long>(cells)));
}

namespace detail {

struct SparseIntColumn {
  std::vector<std::pair<std::uint32_t, unsigned long>> t1;  // (row, (M+N)*D)
  std::vector<std::pair<std::uint32_t, unsigned long>> n;   // (row, N*D)
};

inline std::vector<SparseIntColumn> integer_columns(const TransitionPair& pair, BigInt* denom) {
  const std::size_t dim = pair.dim();
  BigInt d(1);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      d = lcm(d, denominator(pair.M.at(i, j)));
      d = lcm(d, denominator(pair.N.at(i, j)));
    }
  std::vector<SparseIntColumn> cols(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      const Rational t1 = (pair.M.at(i, j) + pair.N.at(i, j)) * Rational(d);
      const Rational n = pair.N.at(i, j) * Rational(d);
      if (denominator(t1) != 1 || denominator(n) != 1)
        throw InternalCheckError("scaled transition entries must be integers");
      const BigInt t1_int = numerator(t1), n_int = numerator(n);
      if (t1_int > std::numeric_limits<unsigned long>::max() / 2)
        throw ResourceLimitError("transition denominators too large for scaled propagation");
      if (t1_int != 0)
        cols[j].t1.emplace_back(static_cast<std::uint32_t>(i),
                                t1_int.convert_to<unsigned long>());
      if (n_int != 0)
        cols[j].n.emplace_back(static_cast<std::uint32_t>(i), n_int.convert_to<unsigned long>());
    }
  }
  *denom = d;
  return cols;
}

inline void addmul_ui(BigInt& acc, const BigInt& a, unsigned long c) {
  mpz_addmul_ui(acc.backend().data(), a.backend().data(), c);
}

inline void set_zero(BigInt& a) { mpz_set_ui(a.backend().data(), 0); }

}  // namespace detail

// EL_n for n = 1..n_max as exact rationals. Below n = r the band covers the
// whole lattice, so those values come from direct enumeration (or from the
// growing-band pass when r > 5); from n = r on, the column sums and first
// moments of Eq-recur are propagated over a shared power-of-k denominator,
// which is enough to read off EL_n = E_n . 1 exactly.
inline ExactCurve exact_curve(ChainModel model, int k, int r, long n_max,
                              unsigned threads = default_thread_count(),
                              MomentState* final_moments = nullptr) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  TransitionPair pair = [&] {
    switch (model) {
      case ChainModel::bernoulli: return build_transition_matrices(k, r, threads);
      case ChainModel::bernoulli_augmented: return build_augmented_matrices(k, r);
      case ChainModel::string_augmented:
        if (k != 2 || r != 1)
          throw std::invalid_argument("string model supports k=2, r=1 only");
        return build_string_matrices();
    }
    throw std::invalid_argument("unknown chain model");
  }();

  ExactCurve curve{model, k, r, std::vector<Rational>(static_cast<std::size_t>(n_max))};

  std::vector<Rational> hook_prefix;
  SectionDistribution dist =
      model == ChainModel::bernoulli
          ? (r <= 4 ? initialize_by_square_enumeration(k, r)
                    : initialize_by_growing_band(k, r, &hook_prefix))
          : initial_augmented_distribution(model, k);

  for (long n = 1; n < std::min<long>(r, n_max + 1); ++n) {
    if (n <= 4)
      curve.values[n - 1] = unrestricted_bernoulli_el(k, n);
    else
      curve.values[n - 1] = hook_prefix.at(static_cast<std::size_t>(n - 1));
  }
  if (n_max < r) return curve;

  const std::size_t dim = pair.dim();
  BigInt step_denom;
  const auto cols = detail::integer_columns(pair, &step_denom);

  // scale the initial distribution onto one shared denominator
  BigInt den(1);
  for (const auto& [z, vec] : dist.support)
    for (const auto& q : vec) den = lcm(den, denominator(q));
  std::vector<BigInt> h(dim), e(dim), h_next(dim), e_next(dim);
  for (const auto& [z, vec] : dist.support)
    for (std::size_t s = 0; s < dim; ++s) {
      if (vec[s] == 0) continue;
      const BigInt scaled = numerator(vec[s]) * (den / denominator(vec[s]));
      h[s] += scaled;
      e[s] += scaled * z;
    }

  auto record = [&](long n) {
    BigInt total(0);
    for (const auto& v : e) total += v;
    curve.values[n - 1] = make_rational(total, den);
  };
  record(r);

  const bool parallel = dim >= 64 && threads > 1;
  for (long n = r + 1; n <= n_max; ++n) {
    auto worker = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t j = lo; j < hi; ++j) {
        BigInt& hj = h_next[j];
        BigInt& ej = e_next[j];
        detail::set_zero(hj);
        detail::set_zero(ej);
        for (const auto& [i, c] : cols[j].t1) {
          detail::addmul_ui(hj, h[i], c);
          detail::addmul_ui(ej, e[i], c);
        }
        for (const auto& [i, c] : cols[j].n) detail::addmul_ui(ej, h[i], c);
      }
    };
    if (parallel)
      parallel_chunks(dim, threads, worker);
    else
      worker(0, dim);
    h.swap(h_next);
    e.swap(e_next);
    den *= step_denom;
    record(n);
  }

  if (final_moments) {
    final_moments->n = n_max;
    final_moments->h.resize(dim);
    final_moments->e.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) {
      final_moments->h[s] = make_rational(h[s], den);
      final_moments->e[s] = make_rational(e[s], den);
    }
  }
  return curve;
}

// The Monte Carlo module's variance-minimizing extrapolation, applied to an
// exact curve (floating point appears only here).
inline FitResult affine_tail_fit(const ExactCurve& curve, long n_min, long n_max) {
  if (n_min < 1 || n_min >= n_max || n_max > curve.n_max())
    throw std::invalid_argument("fit window must satisfy 1 <= n_min < n_max <= curve length");
  std::vector<long> ns;
  std::vector<double> u;
  for (long n = n_min; n <= n_max; ++n) {
    ns.push_back(n);
    u.push_back(to_double(curve.at(n) / Rational(n)));
  }
  return fit_affine(ns, u);
}

}  // namespace rreach
