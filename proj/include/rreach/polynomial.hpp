#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rreach/numeric.hpp"

namespace rreach {

// Univariate polynomial over exact rationals; coefficients[i] multiplies x^i,
// trailing zeros trimmed, the zero polynomial has an empty coefficient list.
class UniPolynomial {
 public:
  UniPolynomial() = default;
  explicit UniPolynomial(std::vector<Rational> coefficients)
      : coefficients_(std::move(coefficients)) {
    trim();
  }

  static UniPolynomial constant(const Rational& c) { return UniPolynomial({c}); }

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  long degree() const { return static_cast<long>(coefficients_.size()) - 1; }

  Rational evaluate(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coefficients_.size(); i-- > 0;) acc = acc * x + coefficients_[i];
    return acc;
  }

  UniPolynomial derivative() const {
    if (coefficients_.size() <= 1) return UniPolynomial();
    std::vector<Rational> out(coefficients_.size() - 1);
    for (std::size_t i = 1; i < coefficients_.size(); ++i)
      out[i - 1] = coefficients_[i] * Rational(static_cast<long>(i));
    return UniPolynomial(std::move(out));
  }

  Rational derivative_at(const Rational& x) const { return derivative().evaluate(x); }

  bool operator==(const UniPolynomial& other) const {
    return coefficients_ == other.coefficients_;
  }

  UniPolynomial operator+(const UniPolynomial& other) const {
    std::vector<Rational> out(std::max(coefficients_.size(), other.coefficients_.size()),
                              Rational(0));
    for (std::size_t i = 0; i < coefficients_.size(); ++i) out[i] += coefficients_[i];
    for (std::size_t i = 0; i < other.coefficients_.size(); ++i) out[i] += other.coefficients_[i];
    return UniPolynomial(std::move(out));
  }

  UniPolynomial operator-(const UniPolynomial& other) const {
    std::vector<Rational> out(std::max(coefficients_.size(), other.coefficients_.size()),
                              Rational(0));
    for (std::size_t i = 0; i < coefficients_.size(); ++i) out[i] += coefficients_[i];
    for (std::size_t i = 0; i < other.coefficients_.size(); ++i) out[i] -= other.coefficients_[i];
    return UniPolynomial(std::move(out));
  }

  UniPolynomial operator*(const UniPolynomial& other) const {
    if (is_zero() || other.is_zero()) return UniPolynomial();
    std::vector<Rational> out(coefficients_.size() + other.coefficients_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      if (coefficients_[i] == 0) continue;
      for (std::size_t j = 0; j < other.coefficients_.size(); ++j)
        out[i + j] += coefficients_[i] * other.coefficients_[j];
    }
    return UniPolynomial(std::move(out));
  }

  UniPolynomial scaled(const Rational& s) const {
    if (s == 0) return UniPolynomial();
    std::vector<Rational> out(coefficients_);
    for (auto& c : out) c *= s;
    return UniPolynomial(std::move(out));
  }

 private:
  void trim() {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  }

  std::vector<Rational> coefficients_;
};

// Unique interpolating polynomial of degree < points.size() through the given
// (x, y) pairs, by Newton divided differences over exact rationals.
inline UniPolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  const std::size_t m = points.size();
  if (m == 0) return UniPolynomial();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("interpolation abscissae must be pairwise distinct");

  std::vector<Rational> dd(m);
  for (std::size_t i = 0; i < m; ++i) dd[i] = points[i].second;
  std::vector<Rational> newton(m);
  newton[0] = dd[0];
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i)
      dd[i] = (dd[i + 1] - dd[i]) / (points[i + level].first - points[i].first);
    newton[level] = dd[0];
  }

  // Horner assembly: p = (...(c_{m-1}(x - x_{m-2}) + c_{m-2})...)(x - x_0) + c_0
  UniPolynomial p = UniPolynomial::constant(newton[m - 1]);
  for (std::size_t level = m - 1; level-- > 0;) {
    UniPolynomial linear({-points[level].first, Rational(1)});
    p = p * linear + UniPolynomial::constant(newton[level]);
  }
  return p;
}

}  // namespace rreach
