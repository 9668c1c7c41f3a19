#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rreach/montecarlo.hpp"

using namespace rreach;

namespace {
McConfig small_config(McModel model, int r, long n_max, long trials, std::uint64_t seed) {
  McConfig c;
  c.model = model;
  c.k = 2;
  c.r = r;
  c.n_max = n_max;
  c.trials = trials;
  c.seed = seed;
  return c;
}
}  // namespace

TEST_CASE("identical configs reproduce identical sums") {
  const McConfig config = small_config(McModel::bernoulli, 2, 200, 500, 9001);
  const McCurve a = run_trials(config);
  const McCurve b = run_trials(config);
  CHECK(a.sum_lengths == b.sum_lengths);
  CHECK(a.sum_sq_lengths == b.sum_sq_lengths);

  // thread count must not change the aggregate
  const McCurve c = run_trials(config, 1);
  const McCurve d = run_trials(config, 4);
  CHECK(c.sum_lengths == d.sum_lengths);
  CHECK(c.sum_lengths == a.sum_lengths);

  const McCurve other = run_trials(small_config(McModel::bernoulli, 2, 200, 500, 9002));
  CHECK(other.sum_lengths != a.sum_lengths);
}

TEST_CASE("single-cell mean is near one half") {
  const McCurve curve = run_trials(small_config(McModel::bernoulli, 1, 1, 100000, 31));
  CHECK(std::abs(curve.mean(1) - 0.5) < 5e-3);

  const McCurve scurve = run_trials(small_config(McModel::random_string, 1, 1, 100000, 31));
  CHECK(std::abs(scurve.mean(1) - 0.5) < 5e-3);
}

TEST_CASE("long-run normalized mean approaches the affine closed form") {
  const McCurve curve = run_trials(small_config(McModel::bernoulli, 1, 1000, 10000, 271828));
  const double target = 8.0 / 11.0 - (32.0 / 121.0) / 1000.0;
  CHECK(std::abs(curve.mean(1000) / 1000.0 - target) < 3e-3);
}

TEST_CASE("per-trial lengths are monotone in n and bounded by n") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    for (McModel model : {McModel::bernoulli, McModel::random_string}) {
      const McCurve one = run_trials(small_config(model, 2, 64, 1, seed));
      for (long n = 1; n <= 64; ++n) {
        CHECK(one.sum_lengths[n - 1] <= static_cast<std::uint64_t>(n));
        if (n > 1) CHECK(one.sum_lengths[n - 1] >= one.sum_lengths[n - 2]);
      }
    }
  }
}

TEST_CASE("aggregate means are nondecreasing in n") {
  const McCurve curve = run_trials(small_config(McModel::bernoulli, 3, 150, 300, 77));
  for (long n = 2; n <= 150; ++n) CHECK(curve.mean(n) >= curve.mean(n - 1));
}

TEST_CASE("string means stay below Bernoulli means statistically") {
  for (int r : {1, 2}) {
    const McCurve b = run_trials(small_config(McModel::bernoulli, r, 200, 3000, 55));
    const McCurve s = run_trials(small_config(McModel::random_string, r, 200, 3000, 56));
    const double slack = 3.0 * (b.stderr_mean(200) + s.stderr_mean(200));
    CHECK(s.mean(200) <= b.mean(200) + slack);
  }
}

TEST_CASE("synthetic affine means are recovered to machine precision") {
  McConfig config = small_config(McModel::bernoulli, 1, 200, 1000, 1);
  McCurve curve{config, {}, {}};
  for (long n = 1; n <= 200; ++n) {
    // mean(n) = (700 n - 280) / 1000 = 0.7 n - 0.28 exactly
    curve.sum_lengths.push_back(static_cast<std::uint64_t>(700 * n - 280));
    curve.sum_sq_lengths.push_back(0);
  }
  const FitResult fit = fit_extrapolation(curve, 1, 200);
  CHECK(fit.gamma_hat == Catch::Approx(0.7).margin(1e-9));
  CHECK(fit.a_hat == Catch::Approx(0.28).margin(1e-7));
}

TEST_CASE("fit window is validated") {
  const McCurve curve = run_trials(small_config(McModel::bernoulli, 1, 50, 20, 5));
  CHECK_THROWS_AS(fit_extrapolation(curve, 40, 30), std::invalid_argument);
  CHECK_THROWS_AS(fit_extrapolation(curve, 1, 51), std::invalid_argument);
}

TEST_CASE("s statistic vanishes when the curves coincide and rejects mismatches") {
  const McCurve curve = run_trials(small_config(McModel::bernoulli, 1, 30, 8, 3));
  ExactCurve shadow{ChainModel::bernoulli, 2, 1, {}};
  for (long n = 1; n <= 30; ++n)
    shadow.values.push_back(make_rational(BigInt(curve.sum_lengths[n - 1]), BigInt(8)));
  CHECK(s_statistic(curve, shadow) == 0.0);

  ExactCurve wrong_r{ChainModel::bernoulli, 2, 2, shadow.values};
  CHECK_THROWS_AS(s_statistic(curve, wrong_r), std::invalid_argument);
  ExactCurve too_short{ChainModel::bernoulli, 2, 1,
                       std::vector<Rational>(shadow.values.begin(), shadow.values.end() - 5)};
  CHECK_THROWS_AS(s_statistic(curve, too_short), std::invalid_argument);

  const ExactCurve real = exact_curve(ChainModel::bernoulli, 2, 1, 30);
  CHECK(s_statistic(curve, real) >= 0.0);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(run_trials(small_config(McModel::bernoulli, 0, 10, 10, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_trials(small_config(McModel::bernoulli, 1, 0, 10, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_trials(small_config(McModel::bernoulli, 1, 10, 0, 1)),
                  std::invalid_argument);
}
