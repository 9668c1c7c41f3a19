#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rreach/config.hpp"
#include "rreach/errors.hpp"
#include "rreach/matrix.hpp"
#include "rreach/parallel.hpp"
#include "rreach/polynomial.hpp"
#include "rreach/section.hpp"

namespace rreach {

enum class ChainModel { bernoulli, bernoulli_augmented, string_augmented };

inline const char* chain_model_name(ChainModel m) {
  switch (m) {
    case ChainModel::bernoulli: return "bernoulli";
    case ChainModel::bernoulli_augmented: return "bernoulli-augmented";
    case ChainModel::string_augmented: return "string";
  }
  return "?";
}

// Section-transition matrices M (center unchanged) and N (center incremented),
// oriented for row-vector left multiplication: entry (i, j) is the probability
// of moving FROM old state i TO new state j, so P_n(z) = P_{n-1}(z) M +
// P_{n-1}(z-1) N. Augmented chains carry the previous center epsilon bit:
// off-states occupy indices 0..dim/2-1, on-states the rest, each block in
// section-state order.
struct TransitionPair {
  ChainModel model;
  int k;
  int r;
  RationalMatrix M;
  RationalMatrix N;

  std::size_t dim() const { return M.rows(); }
};

namespace detail {

inline void check_row_mass(const std::vector<BigInt>& row_m, const std::vector<BigInt>& row_n,
                           const BigInt& denom) {
  BigInt total(0);
  for (const auto& w : row_m) total += w;
  for (const auto& w : row_n) total += w;
  if (total != denom) throw InternalCheckError("transition rows must carry total mass 1");
}

}  // namespace detail

// Exact M and N for the Bernoulli Matching r-reach model at (k, r), built by
// enumerating every old state against every pattern of the 2r+1 fresh epsilon
// values, each 1 with probability 1/k independently. Transitions are
// translation invariant in z.
inline TransitionPair build_transition_matrices(int k, int r,
                                                unsigned threads = default_thread_count()) {
  if (k < 2) throw std::invalid_argument("Bernoulli model needs k >= 2");
  if (r < 1) throw std::invalid_argument("reach must be at least 1");
  if (r > max_reach())
    throw ResourceLimitError("reach r=" + std::to_string(r) +
                             " exceeds the enumeration cap RREACH_MAX_R=" +
                             std::to_string(max_reach()));
  if (r >= 6) {
    const double gib = static_cast<double>(section_dim(r)) * section_dim(r) * 2 * 64.0 /
                       (1024.0 * 1024.0 * 1024.0);
    std::fprintf(stderr,
                 "note: r=%d builds two %zu x %zu exact matrices (roughly %.1f GiB)\n", r,
                 section_dim(r), section_dim(r), gib);
  }

  const std::size_t dim = section_dim(r);
  const std::uint32_t fresh_count = std::uint32_t{1} << (2 * r + 1);
  const BigInt denom = int_pow(BigInt(k), static_cast<unsigned long>(2 * r + 1));
  std::vector<BigInt> miss_pow(static_cast<std::size_t>(2 * r + 2));
  for (std::size_t t = 0; t < miss_pow.size(); ++t)
    miss_pow[t] = int_pow(BigInt(k - 1), static_cast<unsigned long>(t));

  TransitionPair pair{ChainModel::bernoulli, k, r, RationalMatrix(dim, dim),
                      RationalMatrix(dim, dim)};
  parallel_chunks(dim, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<BigInt> row_m(dim), row_n(dim);
    for (std::size_t s = lo; s < hi; ++s) {
      for (auto& w : row_m) w = 0;
      for (auto& w : row_n) w = 0;
      for (std::uint32_t fresh = 0; fresh < fresh_count; ++fresh) {
        const SectionStep step = advance_section(r, static_cast<std::uint32_t>(s), fresh);
        const int zeros = 2 * r + 1 - __builtin_popcount(fresh);
        (step.incremented ? row_n : row_m)[step.next] += miss_pow[zeros];
      }
      detail::check_row_mass(row_m, row_n, denom);
      for (std::size_t j = 0; j < dim; ++j) {
        if (row_m[j] != 0) pair.M.at(s, j) = make_rational(row_m[j], denom);
        if (row_n[j] != 0) pair.N.at(s, j) = make_rational(row_n[j], denom);
      }
    }
  });
  return pair;
}

// The "blown up" Bernoulli chain that also tracks epsilon at the old center.
// Only k=2, r=1 is supported; the carried bit never influences the dynamics,
// it is recorded for comparison with the string-model chain.
inline TransitionPair build_augmented_matrices(int k, int r) {
  if (k != 2 || r != 1)
    throw std::invalid_argument("augmented Bernoulli matrices are defined for k=2, r=1 only");
  const std::size_t dim = 8;
  const BigInt denom(8);
  TransitionPair pair{ChainModel::bernoulli_augmented, k, r, RationalMatrix(dim, dim),
                      RationalMatrix(dim, dim)};
  for (std::size_t s = 0; s < dim; ++s) {
    std::vector<BigInt> row_m(dim), row_n(dim);
    const auto core = static_cast<std::uint32_t>(s & 3u);
    for (std::uint32_t fresh = 0; fresh < 8; ++fresh) {
      const SectionStep step = advance_section(1, core, fresh);
      const std::size_t next = (fresh_center_bit(fresh, 1) ? 4u : 0u) | step.next;
      (step.incremented ? row_n : row_m)[next] += 1;
    }
    detail::check_row_mass(row_m, row_n, denom);
    for (std::size_t j = 0; j < dim; ++j) {
      if (row_m[j] != 0) pair.M.at(s, j) = make_rational(row_m[j], denom);
      if (row_n[j] != 0) pair.N.at(s, j) = make_rational(row_n[j], denom);
    }
  }
  return pair;
}

// gamma plus the data it came from: the stationary row vector e*(1) of
// T(1) = M + N and the two univariate slices of g(lambda, b) = det(T(b) -
// lambda I). gamma = -g_b(1,1) / g_lambda(1,1), the implicit-derivative form
// of the Perron root's slope at b = 1.
struct GammaExact {
  Rational gamma;
  std::vector<Rational> stationary;
  UniPolynomial char_slice_lambda;  // g(lambda, 1)
  UniPolynomial char_slice_b;       // g(1, b)
};

inline GammaExact gamma_exact(const TransitionPair& pair,
                              unsigned threads = default_thread_count()) {
  const std::size_t dim = pair.dim();
  const RationalMatrix t1 = pair.M + pair.N;

  // Each entry of T(b) is affine in b and lambda appears only on the
  // diagonal, so both slices have degree <= dim; interpolate each from
  // dim+1 evaluations at 0..dim.
  std::vector<std::pair<Rational, Rational>> lambda_points(dim + 1), b_points(dim + 1);
  parallel_chunks(2 * (dim + 1), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      if (t <= dim) {
        const Rational lambda(static_cast<long>(t));
        RationalMatrix m = t1;
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) -= lambda;
        lambda_points[t] = {lambda, det(m)};
      } else {
        const std::size_t u = t - dim - 1;
        const Rational b(static_cast<long>(u));
        RationalMatrix m = pair.M.plus_scaled(b, pair.N);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) -= 1;
        b_points[u] = {b, det(m)};
      }
    }
  });

  GammaExact out;
  out.char_slice_lambda = interpolate(lambda_points);
  out.char_slice_b = interpolate(b_points);
  if (out.char_slice_lambda.evaluate(1) != 0 || out.char_slice_b.evaluate(1) != 0)
    throw InternalCheckError("lambda = 1 must be an eigenvalue of the stochastic T(1)");

  const Rational g_lambda = out.char_slice_lambda.derivative_at(1);
  if (g_lambda == 0)
    throw std::domain_error("lambda = 1 is not a simple root of g(lambda, 1)");
  const Rational g_b = out.char_slice_b.derivative_at(1);
  out.gamma = -g_b / g_lambda;

  RationalMatrix shifted = t1;
  for (std::size_t i = 0; i < dim; ++i) shifted.at(i, i) -= 1;
  const auto basis = left_nullspace(shifted);
  if (basis.size() != 1)
    throw std::domain_error("stationary distribution of T(1) is not unique");
  Rational total(0);
  for (std::size_t j = 0; j < dim; ++j) total += basis[0].at(0, j);
  if (total == 0) throw std::domain_error("stationary vector has zero total mass");
  out.stationary.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    out.stationary[j] = basis[0].at(0, j) / total;
    if (out.stationary[j] < 0)
      throw InternalCheckError("stationary vector must be componentwise nonnegative");
  }
  return out;
}

// Closed forms for gamma^B_{k,r}, available for r = 1 and r = 2.
inline Rational gamma_formula_check(int k, int r) {
  if (k < 2) throw std::invalid_argument("closed forms need k >= 2");
  const BigInt kk(k);
  if (r == 1) return make_rational(3 * kk + 2, kk * kk + 3 * kk + 1);
  if (r == 2)
    return make_rational(5 * kk * kk * kk + 20 * kk * kk + 15 * kk + 2,
                         kk * kk * kk * kk + 10 * kk * kk * kk + 20 * kk * kk + 10 * kk + 1);
  throw std::invalid_argument("closed-form gamma is available for r in {1, 2} only");
}

// Conjectured unrestricted Bernoulli limit, printed for comparison only.
inline double conjectured_unrestricted_gamma(int k) { return 2.0 / (1.0 + std::sqrt(k)); }

// The r=2 stationary vector reads naturally as a 4x4 table indexed by cumulative
// offsets: table cell (2*d1x + d2x, 2*d1y + d2y) corresponds to state index
// (d1x, d1y, d2x, d2y) here. This permutation maps between the two layouts.
inline std::size_t r2_table_cell_for_state(std::uint32_t state) {
  const int d1x = state_dx(state, 2, 1), d2x = state_dx(state, 2, 2);
  const int d1y = state_dy(state, 2, 1), d2y = state_dy(state, 2, 2);
  return static_cast<std::size_t>((2 * d1x + d2x) * 4 + (2 * d1y + d2y));
}

}  // namespace rreach
