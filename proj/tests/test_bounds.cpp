#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "flda/bounds.hpp"

namespace {

double gauss_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double simpson(double (*f)(double), double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + k * h;
    sum += h / 6.0 *
           (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
  }
  return sum;
}

// Quadrature oracle for the Gaussian CDF, independent of normal_cdf's erfc.
double cdf_oracle(double x) {
  const double lo = -12.0;
  if (x <= lo) {
    return 0.0;
  }
  return simpson(&gauss_density, lo, x, 4000);
}

std::vector<double> lambda_grid() {
  std::vector<double> grid;
  for (double l = 0.01; l <= 10.0 + 1e-12; l += 0.0999) {
    grid.push_back(l);
  }
  return grid;
}

std::vector<double> gamma_grid() {
  return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

}  // namespace

TEST_CASE("Ratio: domain is [0, 1)") {
  CHECK_NOTHROW(flda::Ratio(0.0));
  CHECK_NOTHROW(flda::Ratio(0.999));
  CHECK_THROWS_AS(flda::Ratio(1.0), std::invalid_argument);
  CHECK_THROWS_AS(flda::Ratio(-0.1), std::invalid_argument);
}

TEST_CASE("normal_cdf: symmetry point and quadrature oracle") {
  CHECK(flda::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(flda::normal_cdf(1.959964) - 0.975) <= 1e-6);
  for (double x : {-3.0, -1.0, -0.25, 0.7, 2.5}) {
    CHECK(std::abs(flda::normal_cdf(x) - cdf_oracle(x)) <= 1e-9);
  }
}

TEST_CASE("normal_quantile: round trip on [-6, 6]") {
  for (double x = -6.0; x <= 6.0 + 1e-12; x += 0.25) {
    const double p = flda::normal_cdf(x);
    CHECK(std::abs(flda::normal_quantile(p) - x) <= 1e-8);
    CHECK(std::abs(flda::normal_cdf(flda::normal_quantile(p)) - p) <= 1e-9);
  }
  CHECK_THROWS_AS(flda::normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(flda::normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("power_lower_bound: reference points") {
  CHECK(flda::power_lower_bound(3.7, flda::Ratio(0.0)) == doctest::Approx(3.7));
  CHECK(std::abs(flda::power_lower_bound(0.5, flda::Ratio(0.5))) <= 1e-12);
  CHECK(std::abs(flda::power_lower_bound(1.0, flda::Ratio(0.5)) - 0.02859) <=
        1e-4);
}

TEST_CASE("varrho: reference points and the squared identity") {
  CHECK(flda::varrho(2.0, flda::Ratio(0.0)) == doctest::Approx(1.0));
  CHECK(std::abs(flda::varrho(0.5, flda::Ratio(0.5))) <= 1e-12);
  CHECK(std::abs(flda::varrho(1.0, flda::Ratio(0.5)) - 0.16910) <= 1e-4);
}

TEST_CASE("covariance_only_approx: arithmetic and large-lambda agreement") {
  CHECK(flda::covariance_only_approx(1.25, flda::Ratio(0.0)) ==
        doctest::Approx(1.25));
  CHECK(flda::covariance_only_approx(4.0, flda::Ratio(0.5)) ==
        doctest::Approx(2.0));
  const double ratio = flda::power_lower_bound(1e6, flda::Ratio(0.5)) /
                       flda::covariance_only_approx(1e6, flda::Ratio(0.5));
  CHECK(ratio >= 0.99);
  CHECK(ratio <= 1.0 + 1e-12);
}

TEST_CASE("error_upper_bound: endpoints and reference value") {
  CHECK(flda::error_upper_bound(0.5, flda::Ratio(0.7)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(flda::error_upper_bound(0.2, flda::Ratio(0.0)) ==
        doctest::Approx(0.2).epsilon(1e-10));
  CHECK(std::abs(flda::error_upper_bound(0.158655, flda::Ratio(0.5)) - 0.4329) <=
        1e-3);
  CHECK_THROWS_AS(flda::error_upper_bound(0.0, flda::Ratio(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(flda::error_upper_bound(0.6, flda::Ratio(0.5)),
                  std::invalid_argument);
}

TEST_CASE("subspace_overlap_bound: reference points") {
  CHECK(flda::subspace_overlap_bound(2.0, flda::Ratio(0.0)) ==
        doctest::Approx(1.0));
  CHECK(flda::subspace_overlap_bound(1.0, flda::Ratio(0.5)) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(flda::subspace_overlap_bound(0.0, flda::Ratio(0.5)) ==
        doctest::Approx(0.0));
}

TEST_CASE("power_lower_bound: grid properties") {
  const auto lambdas = lambda_grid();
  const auto gammas = gamma_grid();
  for (double g : gammas) {
    const flda::Ratio gamma(g);
    double prev = -1.0;
    for (double l : lambdas) {
      const double bound = flda::power_lower_bound(l, gamma);
      CHECK(bound >= 0.0);
      CHECK(bound <= std::min(l, (1.0 - g) * l) + 1e-12);
      CHECK(bound >= prev - 1e-12);  // non-decreasing in lambda
      prev = bound;

      const double rho = flda::varrho(l, gamma);
      CHECK(std::abs(rho * rho * l - bound) <= 1e-12 * (1.0 + l));
    }
  }
  // Non-increasing in gamma at fixed lambda.
  for (double l : lambdas) {
    double prev = flda::power_lower_bound(l, flda::Ratio(gammas[0]));
    for (std::size_t k = 1; k < gammas.size(); ++k) {
      const double cur = flda::power_lower_bound(l, flda::Ratio(gammas[k]));
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("error_upper_bound: grid properties") {
  const std::vector<double> ps = {0.001, 0.01, 0.05, 0.158655, 0.3, 0.45, 0.5};
  for (double g : gamma_grid()) {
    const flda::Ratio gamma(g);
    double prev = 0.0;
    for (double p : ps) {
      const double bound = flda::error_upper_bound(p, gamma);
      CHECK(bound >= p - 1e-10);
      CHECK(bound <= 0.5 + 1e-12);
      CHECK(bound >= prev - 1e-12);  // non-decreasing in p_bayes
      prev = bound;
    }
  }
  // Non-decreasing in gamma at fixed p_bayes.
  for (double p : ps) {
    double prev = flda::error_upper_bound(p, flda::Ratio(0.0));
    for (double g : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      const double cur = flda::error_upper_bound(p, flda::Ratio(g));
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("bound_curve: gamma = 0 rows collapse to the identity bounds") {
  const auto rows = flda::bound_curve({0.0, 0.5}, {0.5, 1.0, 2.0});
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    CHECK(row.p_bayes ==
          doctest::Approx(flda::normal_cdf(-std::sqrt(row.lambda))));
    CHECK(row.power_bound <= (1.0 - row.gamma) * row.lambda + 1e-12);
    if (row.gamma == 0.0) {
      CHECK(row.power_bound == doctest::Approx(row.lambda));
      CHECK(row.error_bound == doctest::Approx(row.p_bayes).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(flda::bound_curve({0.5}, {2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(flda::bound_curve({0.5}, {-1.0}), std::invalid_argument);
}
