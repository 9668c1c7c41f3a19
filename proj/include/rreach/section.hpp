#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "rreach/errors.hpp"

namespace rreach {

// A section is the 2r+1 vertices (n-r,n)...(n,n)...(n,n-r). Its state is the
// 2r decrement bits (d1x, d1y, d2x, ..., drx, dry) relative to the center
// value z, with x_i = x_{i-1} - d_i^x and y_i = y_{i-1} - d_i^y. The state
// index is that bit string read big-endian, d1x most significant; for r=1
// indices 0..3 are (z,z,z), (z,z,z-1), (z,z-1,z), (z,z-1,z-1).

inline std::size_t section_dim(int r) { return std::size_t{1} << (2 * r); }

inline int state_dx(std::uint32_t state, int r, int i) {
  return static_cast<int>((state >> (2 * (r - i) + 1)) & 1u);
}
inline int state_dy(std::uint32_t state, int r, int i) {
  return static_cast<int>((state >> (2 * (r - i))) & 1u);
}

// Fresh-bit mask layout for one section advance, 2r+1 bits total:
// bit t < r is epsilon at (n-(r-t), n), bit r is epsilon at (n,n),
// bit r+j is epsilon at (n, n-j).
inline int fresh_column_bit(std::uint32_t mask, int r, int i) {
  return static_cast<int>((mask >> (r - i)) & 1u);
}
inline int fresh_center_bit(std::uint32_t mask, int r) {
  return static_cast<int>((mask >> r) & 1u);
}
inline int fresh_row_bit(std::uint32_t mask, int r, int j) {
  return static_cast<int>((mask >> (r + j)) & 1u);
}

struct SectionStep {
  std::uint32_t next;
  bool incremented;  // center moved from z to z+1
};

// Advances one section under the r-reach recurrence given the 2r+1 fresh
// epsilon values. The new column is filled from the far corner toward the
// center, then the new row, then the center; the corner cells at distance
// exactly r still take a diagonal step on a match, and lose one predecessor
// only when their epsilon is 0.
inline SectionStep advance_section(int r, std::uint32_t state, std::uint32_t fresh) {
  if (r < 1 || r > 15) throw std::invalid_argument("advance_section needs 1 <= r <= 15");
  std::array<int, 16> x{}, y{}, nx{}, ny{};
  x[0] = 0;
  y[0] = 0;
  for (int i = 1; i <= r; ++i) {
    x[i] = x[i - 1] - state_dx(state, r, i);
    y[i] = y[i - 1] - state_dy(state, r, i);
  }

  nx[r] = fresh_column_bit(fresh, r, r) ? x[r] + 1 : x[r - 1];
  for (int i = r - 1; i >= 1; --i)
    nx[i] = fresh_column_bit(fresh, r, i) ? x[i] + 1 : std::max(x[i - 1], nx[i + 1]);
  ny[r] = fresh_row_bit(fresh, r, r) ? y[r] + 1 : y[r - 1];
  for (int j = r - 1; j >= 1; --j)
    ny[j] = fresh_row_bit(fresh, r, j) ? y[j] + 1 : std::max(y[j - 1], ny[j + 1]);
  const int z = fresh_center_bit(fresh, r) ? x[0] + 1 : std::max(nx[1], ny[1]);

  if (z != 0 && z != 1) throw InternalCheckError("section center moved by more than one");
  std::uint32_t out = 0;
  int px = z, py = z;
  for (int i = 1; i <= r; ++i) {
    const int dx = px - nx[i];
    const int dy = py - ny[i];
    if ((dx | dy) < 0 || dx > 1 || dy > 1)
      throw InternalCheckError("adjacent section values must differ by 0 or 1");
    out |= static_cast<std::uint32_t>(dx) << (2 * (r - i) + 1);
    out |= static_cast<std::uint32_t>(dy) << (2 * (r - i));
    px = nx[i];
    py = ny[i];
  }
  return {out, z == 1};
}

}  // namespace rreach
