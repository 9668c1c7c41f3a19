#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "rreach/lattice.hpp"
#include "rreach/transfer.hpp"

namespace rreach {

// One 2x2 window of match indicators, laid out
//   [ eps(i-1, j)   eps(i, j)   ]
//   [ eps(i-1, j-1) eps(i, j-1) ]
// Over a binary alphabet such a window is realizable by a string pair exactly
// when its bit sum is 0, 2 or 4.
struct Window2x2 {
  std::uint8_t upper_left, upper_right, lower_left, lower_right;

  int bit_sum() const { return upper_left + upper_right + lower_left + lower_right; }
  bool string_realizable() const {
    const int s = bit_sum();
    return s == 0 || s == 2 || s == 4;
  }
  bool operator==(const Window2x2&) const = default;
};

// The eight realizable windows.
inline const std::array<Window2x2, 8>& realizable_windows() {
  static const std::array<Window2x2, 8> set = {{
      {1, 1, 1, 1},
      {0, 1, 1, 0},
      {0, 0, 1, 1},
      {1, 0, 1, 0},
      {0, 0, 0, 0},
      {1, 0, 0, 1},
      {1, 1, 0, 0},
      {0, 1, 0, 1},
  }};
  return set;
}

// Number of binary string pairs (u, v) with delta_{u(i),v(j)} equal to the
// band on |i-j| <= 1: 2 when every interior 2x2 window sum is in {0,2,4},
// else 0.
inline long realizability_weight(const EpsilonBand& band) {
  if (band.r() != 1)
    throw std::invalid_argument("string realizability is implemented for r=1 only");
  for (long i = 2; i <= band.n(); ++i) {
    const Window2x2 w{band.at(i - 1, i), band.at(i, i), band.at(i - 1, i - 1),
                      band.at(i, i - 1)};
    if (!w.string_realizable()) return 0;
  }
  return 2;
}

// The Random String model's 8x8 chain for k=2, r=1. States carry the match
// bit at the old center; the fresh window is derived from the two letter
// agreements a = [u(n) = u(n-1)] and b = [v(n) = v(n-1)], each uniform on
// {0,1}: over a binary alphabet,
//   eps(n-1, n) = eps(n-1, n-1) XOR (1 - b),
//   eps(n, n-1) = eps(n-1, n-1) XOR (1 - a),
//   eps(n, n)   = eps(n-1, n-1) XOR a XOR b.
// The result is asserted against the known hand-computed displays in the tests
// rather than hardcoded here.
inline TransitionPair build_string_matrices() {
  const std::size_t dim = 8;
  const BigInt denom(4);
  TransitionPair pair{ChainModel::string_augmented, 2, 1, RationalMatrix(dim, dim),
                      RationalMatrix(dim, dim)};
  for (std::size_t s = 0; s < dim; ++s) {
    std::vector<BigInt> row_m(dim), row_n(dim);
    const auto core = static_cast<std::uint32_t>(s & 3u);
    const std::uint32_t eps_center = static_cast<std::uint32_t>(s >> 2);
    for (std::uint32_t a = 0; a < 2; ++a) {
      for (std::uint32_t b = 0; b < 2; ++b) {
        const std::uint32_t ex = eps_center ^ (1u - b);
        const std::uint32_t ey = eps_center ^ (1u - a);
        const std::uint32_t ec = eps_center ^ a ^ b;
        const std::uint32_t fresh = ex | (ec << 1) | (ey << 2);
        const SectionStep step = advance_section(1, core, fresh);
        const std::size_t next = (ec ? 4u : 0u) | step.next;
        (step.incremented ? row_n : row_m)[next] += 1;
      }
    }
    detail::check_row_mass(row_m, row_n, denom);
    for (std::size_t j = 0; j < dim; ++j) {
      if (row_m[j] != 0) pair.M.at(s, j) = make_rational(row_m[j], denom);
      if (row_n[j] != 0) pair.N.at(s, j) = make_rational(row_n[j], denom);
    }
  }
  return pair;
}

inline GammaExact gamma_string_exact() { return gamma_exact(build_string_matrices()); }

}  // namespace rreach
