#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rreach {

struct FitResult {
  double gamma_hat = 0.0;
  double a_hat = 0.0;
  long n_min = 0;
  long n_max = 0;
  double residual_variance = 0.0;
};

// Extrapolation of EL_n ~ gamma n - A. The variance over the window of
// (EL_n + A)/n is quadratic in A; its minimizer is
//   A* = -Cov(EL_n/n, 1/n) / Var(1/n),
// and gamma is the window average of (EL_n + A*)/n. Inputs are the window's
// n values and u_n = EL_n / n.
inline FitResult fit_affine(const std::vector<long>& ns, const std::vector<double>& u) {
  if (ns.size() != u.size()) throw std::invalid_argument("fit inputs must align");
  const std::size_t m = ns.size();
  if (m < 3) throw std::invalid_argument("fit window needs at least 3 points");

  std::vector<double> w(m);
  for (std::size_t t = 0; t < m; ++t) {
    if (ns[t] < 1) throw std::invalid_argument("fit window needs n >= 1");
    w[t] = 1.0 / static_cast<double>(ns[t]);
  }
  double mean_u = 0.0, mean_w = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    mean_u += u[t];
    mean_w += w[t];
  }
  mean_u /= static_cast<double>(m);
  mean_w /= static_cast<double>(m);
  double cov_uw = 0.0, var_w = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    cov_uw += (u[t] - mean_u) * (w[t] - mean_w);
    var_w += (w[t] - mean_w) * (w[t] - mean_w);
  }
  cov_uw /= static_cast<double>(m);
  var_w /= static_cast<double>(m);
  if (var_w <= 0.0) throw std::invalid_argument("degenerate fit window");

  FitResult out;
  out.a_hat = -cov_uw / var_w;
  out.gamma_hat = mean_u + out.a_hat * mean_w;
  out.n_min = ns.front();
  out.n_max = ns.back();
  double rv = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const double q = u[t] + out.a_hat * w[t];
    const double d = q - out.gamma_hat;
    rv += d * d;
  }
  out.residual_variance = rv / static_cast<double>(m);
  return out;
}

}  // namespace rreach
