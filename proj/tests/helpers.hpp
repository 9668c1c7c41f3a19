#pragma once

// Test-only independent oracles and the golden hand-computed displays the
// constructed objects are checked against.

#include <random>
#include <vector>

#include "rreach/lattice.hpp"
#include "rreach/matrix.hpp"
#include "rreach/numeric.hpp"
#include "rreach/polynomial.hpp"

namespace testutil {

using rreach::BigInt;
using rreach::EpsilonBand;
using rreach::Rational;
using rreach::RationalMatrix;
using rreach::StringSeq;
using rreach::UniPolynomial;
using rreach::frac;
using rreach::make_rational;

// Reach-constrained LCS straight from the definition: the best monotone
// matching whose pairs satisfy u(i) = v(j) and |i-j| <= r. Plain memoized
// recursion over suffixes; shares nothing with the banded sweep.
inline long brute_reach_lcs(const StringSeq& u, const StringSeq& v, long r) {
  const long n = u.size(), m = v.size();
  std::vector<long> memo(static_cast<std::size_t>((n + 1) * (m + 1)), -1);
  auto rec = [&](auto&& self, long i, long j) -> long {
    if (i > n || j > m) return 0;
    long& cell = memo[static_cast<std::size_t>((i - 1) * (m + 1) + (j - 1))];
    if (cell >= 0) return cell;
    long best = std::max(self(self, i + 1, j), self(self, i, j + 1));
    if (u.symbols[i - 1] == v.symbols[j - 1] && i - j <= r && j - i <= r)
      best = std::max(best, 1 + self(self, i + 1, j + 1));
    return cell = best;
  };
  return n == 0 || m == 0 ? 0 : rec(rec, 1, 1);
}

inline Rational cofactor_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m.at(0, 0);
  Rational acc(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m.at(0, c) == 0) continue;
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor.at(i - 1, jj++) = m.at(i, j);
      }
    }
    const Rational term = m.at(0, c) * cofactor_det(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

inline UniPolynomial poly_det(const std::vector<std::vector<UniPolynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return UniPolynomial::constant(Rational(1));
  if (n == 1) return m[0][0];
  UniPolynomial acc;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<UniPolynomial>> minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor[i - 1].push_back(m[i][j]);
    const UniPolynomial term = m[0][c] * poly_det(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline Rational random_rational(std::mt19937_64& rng, long num_range = 40, long den_range = 9) {
  const long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
  const long den = static_cast<long>(rng() % den_range) + 1;
  return frac(num, den);
}

inline StringSeq random_string(std::mt19937_64& rng, int k, long n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (auto& c : s) c = static_cast<int>(rng() % static_cast<unsigned long>(k));
  return StringSeq(k, std::move(s));
}

inline EpsilonBand random_band(std::mt19937_64& rng, long n, long r, double p = 0.5) {
  EpsilonBand band(n, r);
  for (long i = 1; i <= n; ++i)
    for (long j = std::max(1L, i - r); j <= std::min(n, i + r); ++j)
      band.set(i, j, (rng() % 1000) < p * 1000);
  return band;
}

// ---- golden displays --------------------------------------------------

inline RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

inline RationalMatrix bernoulli_r1_M(int k) {
  const Rational z(0);
  const BigInt kk(k), km1(k - 1);
  return from_rows({
      {make_rational(km1 * km1 * km1, kk * kk * kk), z, z, z},
      {make_rational(km1 * km1, kk * kk), z, z, z},
      {make_rational(km1 * km1, kk * kk), z, z, z},
      {make_rational(km1, kk), z, z, z},
  });
}

inline RationalMatrix bernoulli_r1_N(int k) {
  const Rational z(0);
  const BigInt kk(k), km1(k - 1);
  const Rational inv_k = make_rational(BigInt(1), kk);
  const Rational inv_k2 = make_rational(BigInt(1), kk * kk);
  const Rational a = make_rational(km1, kk * kk);
  return from_rows({
      {inv_k2, a, a, make_rational(km1 * km1, kk * kk * kk)},
      {z, inv_k, z, a},
      {z, z, inv_k, a},
      {z, z, z, inv_k},
  });
}

inline RationalMatrix string_M() {
  RationalMatrix m(8, 8);
  const std::vector<Rational> col0 = {frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 2),
                                      Rational(0), frac(1, 4), frac(1, 4), frac(1, 2)};
  for (std::size_t i = 0; i < 8; ++i) m.at(i, 0) = col0[i];
  return m;
}

inline RationalMatrix string_N() {
  const Rational z(0), q(frac(1, 4)), h(frac(1, 2));
  return from_rows({
      {q, z, z, z, z, q, q, z},
      {z, q, z, z, z, q, z, q},
      {z, z, q, z, z, z, q, q},
      {z, z, z, z, z, z, z, h},
      {z, q, q, z, q, z, z, q},
      {z, q, z, z, z, q, z, q},
      {z, z, q, z, z, z, q, q},
      {z, z, z, z, z, z, z, h},
  });
}

inline RationalMatrix augmented_M() {
  RationalMatrix m(8, 8);
  const std::vector<Rational> col0 = {frac(1, 8), frac(1, 4), frac(1, 4), frac(1, 2),
                                      frac(1, 8), frac(1, 4), frac(1, 4), frac(1, 2)};
  for (std::size_t i = 0; i < 8; ++i) m.at(i, 0) = col0[i];
  return m;
}

inline RationalMatrix augmented_N() {
  const Rational z(0), e(frac(1, 8)), q(frac(1, 4)), h(frac(1, 2));
  return from_rows({
      {e, e, e, z, e, e, e, e},
      {z, q, z, z, z, q, z, q},
      {z, z, q, z, z, z, q, q},
      {z, z, z, z, z, z, z, h},
      {e, e, e, z, e, e, e, e},
      {z, q, z, z, z, q, z, q},
      {z, z, q, z, z, z, q, q},
      {z, z, z, z, z, z, z, h},
  });
}

// det(T(b) - lambda I) for the 1-reach Bernoulli chain at general k.
inline Rational g_bernoulli_r1(int k, const Rational& l, const Rational& b) {
  const Rational kk(k);
  const Rational inner = b * b * b - b * b * kk * l * (kk + 2) +
                         b * l * (kk * kk * kk + 2 * kk * kk * kk * l - 3 * kk * kk +
                                  kk * kk * l + 3 * kk - 1) +
                         l * l * kk * (kk * kk * kk - l * kk * kk * kk - 3 * kk * kk +
                                       3 * kk - 1);
  return (b - l * kk) * inner / (kk * kk * kk * kk * kk);
}

// det(T(b) - lambda I) for the k=2 string-model chain.
inline Rational g_string(const Rational& l, const Rational& b) {
  const Rational inner = b * b * b + b * b * (Rational(1) - 8 * l) +
                         2 * b * l * (10 * l - 1) + 4 * l * l * (Rational(1) - 4 * l);
  return frac(-1, 128) * l * l * l * (b - 2 * l) * (b - 4 * l) * inner;
}

// det(T(b) - lambda I) for the on/off-augmented k=2 Bernoulli chain.
inline Rational g_augmented(const Rational& l, const Rational& b) {
  const Rational inner =
      b * b * b - 8 * b * b * l + b * l * (Rational(1) + 20 * l) + 2 * l * l * (Rational(1) - 8 * l);
  return frac(1, 32) * l * l * l * l * (b - 2 * l) * inner;
}

// e*(1) for 1-reach Bernoulli at general k: (k/(k^2+3k+1)) (k, 1, 1, (1+k)/k).
inline std::vector<Rational> stationary_r1(int k) {
  const BigInt kk(k);
  const Rational scale = make_rational(kk, kk * kk + 3 * kk + 1);
  return {scale * Rational(k), scale, scale, scale * make_rational(kk + 1, kk)};
}

// The r=2 stationary table, indexed by cumulative offsets; unnormalized.
inline Rational r2_table_entry(int k, std::size_t a, std::size_t b) {
  const Rational kk(k);
  const std::vector<std::vector<Rational>> table = {
      {kk * kk, 2 * kk, kk, Rational(1)},
      {2 * kk, kk + 4, kk + 2, 2 * (kk + 1) / kk},
      {kk, kk + 2, kk + 1, (2 * kk + 1) / kk},
      {Rational(1), 2 * (kk + 1) / kk, (2 * kk + 1) / kk, (kk * kk + 4 * kk + 1) / (kk * kk)},
  };
  return table[a][b];
}

inline Rational r2_normalizer(int k) {
  const BigInt kk(k);
  return make_rational(kk * kk,
                       kk * kk * kk * kk + 10 * kk * kk * kk + 20 * kk * kk + 10 * kk + 1);
}

}  // namespace testutil
