#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rreach/oracle.hpp"
#include "rreach/propagation.hpp"

using namespace rreach;

TEST_CASE("string expectation basics") {
  CHECK(string_expectation(2, 1, std::nullopt).expectation == frac(1, 2));
  CHECK(string_expectation(3, 1, std::nullopt).expectation == frac(1, 3));
  CHECK(string_expectation(2, 1, std::nullopt).enumeration_count == 4);
  CHECK_THROWS_AS(string_expectation(2, 30, std::nullopt), ResourceLimitError);
}

TEST_CASE("restricted string expectation equals the augmented propagation") {
  const ExactCurve curve = exact_curve(ChainModel::string_augmented, 2, 1, 4);
  for (long n = 1; n <= 4; ++n)
    CHECK(string_expectation(2, n, 1).expectation == curve.at(n));
}

TEST_CASE("unrestricted string expectation is superadditive") {
  std::vector<Rational> el;
  for (long n = 1; n <= 6; ++n)
    el.push_back(string_expectation(2, n, std::nullopt).expectation);
  for (long n = 1; n <= 5; ++n)
    for (long m = 1; n + m <= 6; ++m)
      CHECK(el[n + m - 1] >= el[n - 1] + el[m - 1]);
}

TEST_CASE("bernoulli expectation basics") {
  CHECK(bernoulli_expectation(2, 1, 1).expectation == frac(1, 2));
  CHECK(bernoulli_expectation(2, 1, 1).enumeration_count == 2);
  CHECK_THROWS_AS(bernoulli_expectation(2, 10, 2), ResourceLimitError);
}

TEST_CASE("bernoulli expectation equals exact propagation") {
  const ExactCurve curve = exact_curve(ChainModel::bernoulli, 2, 1, 3);
  CHECK(bernoulli_expectation(2, 3, 1).expectation == curve.at(3));
}

TEST_CASE("full-band expectation equals the unrestricted model") {
  // r >= n: the band covers the lattice
  CHECK(bernoulli_expectation(2, 2, 2).expectation == unrestricted_bernoulli_el(2, 2));
  CHECK(bernoulli_expectation(2, 2, 2).expectation ==
        bernoulli_expectation(2, 2, 3).expectation);
  CHECK(bernoulli_expectation(3, 2, 2).expectation == unrestricted_bernoulli_el(3, 2));
  // EL^B_{r,k,r} = EL^B_r, the superadditivity anchor
  for (int r : {2, 3}) {
    CHECK(bernoulli_expectation(2, r, r).expectation == unrestricted_bernoulli_el(2, r));
  }
}

TEST_CASE("weights against different k are consistent") {
  // n=1, r=1: single cell, expectation 1/k
  for (int k : {2, 3, 4, 7})
    CHECK(bernoulli_expectation(k, 1, 1).expectation == make_rational(BigInt(1), BigInt(k)));
}

TEST_CASE("realizability census counts") {
  const CensusSummary c1 = realizability_census(1);
  CHECK(c1.configurations == 2);
  CHECK(c1.weight2 == 2);
  CHECK(c1.weight0 == 0);
  CHECK(c1.consistent);

  const CensusSummary c2 = realizability_census(2);
  CHECK(c2.configurations == 16);
  CHECK(c2.weight2 == 8);

  const CensusSummary c3 = realizability_census(3);
  CHECK(c3.consistent);

  CHECK_THROWS_AS(realizability_census(6), ResourceLimitError);
}
