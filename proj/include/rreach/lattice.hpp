#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rreach {

// Integer-encoded string over the alphabet {0, ..., alphabet-1}.
struct StringSeq {
  int alphabet = 2;
  std::vector<int> symbols;

  StringSeq() = default;
  StringSeq(int alphabet_size, std::vector<int> syms)
      : alphabet(alphabet_size), symbols(std::move(syms)) {
    if (alphabet < 2) throw std::invalid_argument("alphabet size must be at least 2");
    for (int s : symbols)
      if (s < 0 || s >= alphabet) throw std::invalid_argument("symbol outside alphabet");
  }

  long size() const { return static_cast<long>(symbols.size()); }
};

// Maps two ASCII strings onto one dense shared alphabet.
inline std::pair<StringSeq, StringSeq> encode_pair(const std::string& a, const std::string& b) {
  std::map<char, int> code;
  for (char c : a) code.emplace(c, 0);
  for (char c : b) code.emplace(c, 0);
  int next = 0;
  for (auto& kv : code) kv.second = next++;
  const int k = std::max(next, 2);
  auto encode = [&](const std::string& s) {
    std::vector<int> out;
    out.reserve(s.size());
    for (char c : s) out.push_back(code.at(c));
    return StringSeq(k, std::move(out));
  };
  return {encode(a), encode(b)};
}

// Match indicators on the diagonal band |i-j| <= r of an n x n lattice,
// stored row-major with width 2r+1. Out-of-band queries are errors.
class EpsilonBand {
 public:
  EpsilonBand(long n, long r) : n_(n), r_(r) {
    if (n < 0 || r < 1) throw std::invalid_argument("EpsilonBand needs n >= 0, r >= 1");
    bits_.assign(static_cast<std::size_t>(n) * width(), 0);
  }

  long n() const { return n_; }
  long r() const { return r_; }
  long width() const { return 2 * r_ + 1; }

  bool in_band(long i, long j) const {
    return i >= 1 && i <= n_ && j >= 1 && j <= n_ && j - i <= r_ && i - j <= r_;
  }

  std::uint8_t at(long i, long j) const { return bits_[index(i, j)]; }
  void set(long i, long j, bool value) { bits_[index(i, j)] = value ? 1 : 0; }

 private:
  std::size_t index(long i, long j) const {
    if (!in_band(i, j)) throw std::out_of_range("epsilon query outside the band");
    return static_cast<std::size_t>(i - 1) * width() + static_cast<std::size_t>(j - i + r_);
  }

  long n_, r_;
  std::vector<std::uint8_t> bits_;
};

struct DpResult {
  long length = 0;
  // Section values [R(n-r,n) ... R(n-1,n), R(n,n), R(n,n-1) ... R(n,n-r)];
  // index r holds the center.
  std::vector<long> final_section;
};

// Row sweep of the r-reach recurrence over the band. eps(i,j) is consulted
// only for in-lattice band cells; on_diag(i, R_ii) fires once per row.
// Cells with j-i = r have no predecessor above, cells with i-j = r none to
// the left; a match always steps diagonally.
template <class EpsFn, class DiagFn>
inline void banded_sweep(long n, long r, EpsFn&& eps, DiagFn&& on_diag,
                         std::vector<long>* final_section = nullptr) {
  if (n < 0 || r < 1) throw std::invalid_argument("banded_sweep needs n >= 0, r >= 1");
  const long w = 2 * r + 1;
  std::vector<long> prev(static_cast<std::size_t>(w), 0), cur(static_cast<std::size_t>(w), 0);
  std::vector<long> column_tail;
  if (final_section) column_tail.assign(static_cast<std::size_t>(r) + 1, 0);

  for (long i = 1; i <= n; ++i) {
    for (long o = 0; o < w; ++o) {
      const long j = i + o - r;
      if (j < 1 || j > n) {
        cur[o] = 0;
        continue;
      }
      long v;
      if (eps(i, j)) {
        v = prev[o] + 1;
      } else if (o == 0) {
        v = prev[1];
      } else if (o == w - 1) {
        v = cur[o - 1];
      } else {
        v = std::max(cur[o - 1], prev[o + 1]);
      }
      cur[o] = v;
      if (final_section && j == n && n - i <= r) column_tail[n - i] = v;
    }
    on_diag(i, cur[r]);
    std::swap(prev, cur);
  }

  if (final_section) {
    auto& s = *final_section;
    s.assign(static_cast<std::size_t>(w), 0);
    for (long i = 0; i <= r; ++i) s[r - i] = column_tail[i];
    if (n >= 1)
      for (long j = 1; j <= r; ++j) s[r + j] = (n - j >= 1) ? prev[r - j] : 0;
  }
}

inline long lcs_length(const StringSeq& u, const StringSeq& v) {
  if (u.alphabet != v.alphabet) throw std::invalid_argument("alphabet mismatch");
  const long n = u.size(), m = v.size();
  std::vector<long> prev(static_cast<std::size_t>(m) + 1, 0), cur(prev);
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= m; ++j) {
      if (u.symbols[i - 1] == v.symbols[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(cur[j - 1], prev[j]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

inline long rreach_string_length(const StringSeq& u, const StringSeq& v, long r) {
  if (u.size() != v.size()) throw std::invalid_argument("r-reach needs equal-length strings");
  if (u.alphabet != v.alphabet) throw std::invalid_argument("alphabet mismatch");
  long length = 0;
  banded_sweep(
      u.size(), r,
      [&](long i, long j) { return u.symbols[i - 1] == v.symbols[j - 1]; },
      [&](long, long d) { length = d; });
  return length;
}

inline EpsilonBand band_from_strings(const StringSeq& u, const StringSeq& v, long r) {
  if (u.size() != v.size()) throw std::invalid_argument("band needs equal-length strings");
  const long n = u.size();
  EpsilonBand band(n, r);
  for (long i = 1; i <= n; ++i)
    for (long j = std::max(1L, i - r); j <= std::min(n, i + r); ++j)
      band.set(i, j, u.symbols[i - 1] == v.symbols[j - 1]);
  return band;
}

inline DpResult rreach_band_length(const EpsilonBand& band) {
  DpResult out;
  banded_sweep(
      band.n(), band.r(), [&](long i, long j) { return band.at(i, j) != 0; },
      [](long, long) {}, &out.final_section);
  out.length = out.final_section[static_cast<std::size_t>(band.r())];
  return out;
}

}  // namespace rreach
