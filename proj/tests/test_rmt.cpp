#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "flda/rmt.hpp"

namespace {

// Plain adaptive Simpson over [a, b]; independent of the library's
// substitution-based quadrature.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_oracle(const std::function<double(double)>& f, double a,
                        double b) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, 1e-9, 48);
}

// Invert mp_cdf by bisection inside the support.
double mp_quantile(double p, const flda::MpLaw& law) {
  double lo = law.lambda_minus();
  double hi = law.lambda_plus();
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (flda::mp_cdf(mid, law) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("MpLaw: support endpoints") {
  const flda::MpLaw law(0.25);
  CHECK(law.lambda_minus() == doctest::Approx(0.25));
  CHECK(law.lambda_plus() == doctest::Approx(2.25));
  const flda::MpLaw half(0.5);
  CHECK(half.lambda_minus() == doctest::Approx(0.085786).epsilon(1e-4));
  CHECK(half.lambda_plus() == doctest::Approx(2.914214).epsilon(1e-4));
}

TEST_CASE("mp_density: zero outside the support, unit mass, unit mean") {
  const flda::MpLaw law(0.3);
  CHECK(flda::mp_density(law.lambda_minus() - 0.01, law) == 0.0);
  CHECK(flda::mp_density(law.lambda_plus() + 0.01, law) == 0.0);
  CHECK(flda::mp_density(1.0, law) >= 0.0);
  CHECK_THROWS_AS(flda::mp_density(1.0, flda::MpLaw(0.0)),
                  std::invalid_argument);

  for (double g : {0.2, 0.5, 0.8}) {
    const flda::MpLaw mp(g);
    auto density = [&mp](double l) { return flda::mp_density(l, mp); };
    const double mass =
        integrate_oracle(density, mp.lambda_minus(), mp.lambda_plus());
    CHECK(std::abs(mass - 1.0) <= 1e-6);
    auto first = [&mp](double l) { return l * flda::mp_density(l, mp); };
    const double mean =
        integrate_oracle(first, mp.lambda_minus(), mp.lambda_plus());
    CHECK(std::abs(mean - 1.0) <= 1e-6);
  }
}

TEST_CASE("mp_cdf: endpoints, monotonicity, quadrature oracle") {
  const flda::MpLaw law(0.4);
  CHECK(flda::mp_cdf(law.lambda_minus(), law) == 0.0);
  CHECK(flda::mp_cdf(law.lambda_plus(), law) == 1.0);

  double prev = 0.0;
  for (double l = law.lambda_minus(); l <= law.lambda_plus(); l += 0.05) {
    const double f = flda::mp_cdf(l, law);
    CHECK(f >= prev - 1e-12);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }

  // Spot check against direct density integration.
  for (double l : {0.5, 1.0, 1.8}) {
    auto density = [&law](double x) { return flda::mp_density(x, law); };
    const double oracle = integrate_oracle(density, law.lambda_minus(), l);
    CHECK(std::abs(flda::mp_cdf(l, law) - oracle) <= 1e-5);
  }

  // gamma = 0 degenerates to the point mass at 1.
  const flda::MpLaw point(0.0);
  CHECK(flda::mp_cdf(0.99, point) == 0.0);
  CHECK(flda::mp_cdf(1.0, point) == 1.0);
}

TEST_CASE("mp_inverse_moment: closed forms and quadrature agreement") {
  CHECK(flda::mp_inverse_moment(1, flda::MpLaw(0.0),
                                flda::MomentMethod::analytic) ==
        doctest::Approx(1.0));
  CHECK(flda::mp_inverse_moment(2, flda::MpLaw(0.0),
                                flda::MomentMethod::analytic) ==
        doctest::Approx(1.0));
  CHECK(flda::mp_inverse_moment(1, flda::MpLaw(0.5),
                                flda::MomentMethod::analytic) ==
        doctest::Approx(2.0));
  CHECK(flda::mp_inverse_moment(2, flda::MpLaw(0.5),
                                flda::MomentMethod::analytic) ==
        doctest::Approx(8.0));
  CHECK_THROWS_AS(
      flda::mp_inverse_moment(3, flda::MpLaw(0.5), flda::MomentMethod::analytic),
      std::invalid_argument);

  for (double g = 0.1; g <= 0.9 + 1e-12; g += 0.1) {
    const flda::MpLaw law(g);
    for (int order : {1, 2}) {
      const double analytic =
          flda::mp_inverse_moment(order, law, flda::MomentMethod::analytic);
      const double quad =
          flda::mp_inverse_moment(order, law, flda::MomentMethod::quadrature);
      CHECK(std::abs(analytic - quad) <= 1e-6 * (1.0 + std::abs(analytic)));
    }
  }
}

TEST_CASE("wishart_spectrum: scalar case matches the chi-square mean") {
  const int n = 10000;
  const auto sample = flda::wishart_spectrum(1, n, 3);
  REQUIRE(sample.eigenvalues.size() == 1);
  CHECK(std::abs(sample.eigenvalues(0) - 1.0) <= 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("wishart_spectrum: shape, order, determinism") {
  const auto sample = flda::wishart_spectrum(30, 120, 11);
  REQUIRE(sample.eigenvalues.size() == 30);
  for (int i = 1; i < 30; ++i) {
    CHECK(sample.eigenvalues(i) >= sample.eigenvalues(i - 1));
    CHECK(sample.eigenvalues(i) >= -1e-10);
  }
  const auto again = flda::wishart_spectrum(30, 120, 11);
  CHECK((again.eigenvalues - sample.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wishart_spectrum: top eigenvalue near the upper edge") {
  const auto sample = flda::wishart_spectrum(1000, 2000, 1);
  const double top = sample.eigenvalues(sample.eigenvalues.size() - 1);
  CHECK(std::abs(top - flda::MpLaw(0.5).lambda_plus()) <= 0.15);
}

TEST_CASE("esd_eval: counting semantics") {
  flda::SpectralSample sample;
  sample.eigenvalues.resize(3);
  sample.eigenvalues << 1.0, 2.0, 3.0;
  sample.dim = 3;
  CHECK(flda::esd_eval(sample, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(flda::esd_eval(sample, 0.5) == 0.0);
  CHECK(flda::esd_eval(sample, 3.5) == 1.0);

  // Brute-force counting oracle on a random spectrum.
  const auto random_sample = flda::wishart_spectrum(25, 100, 17);
  for (double l = 0.0; l <= 3.0; l += 0.173) {
    int count = 0;
    for (Eigen::Index i = 0; i < 25; ++i) {
      count += random_sample.eigenvalues(i) <= l;
    }
    CHECK(flda::esd_eval(random_sample, l) ==
          doctest::Approx(count / 25.0).epsilon(1e-14));
  }
}

TEST_CASE("ks_distance: exact quantile sample sits at 1/(2D)") {
  const flda::MpLaw law(0.5);
  const int d = 100;
  flda::SpectralSample sample;
  sample.eigenvalues.resize(d);
  for (int i = 0; i < d; ++i) {
    sample.eigenvalues(i) = mp_quantile((i + 0.5) / d, law);
  }
  sample.dim = d;
  CHECK(flda::ks_distance(sample, law) <= 1.0 / d + 1e-6);
  CHECK_THROWS_AS(flda::ks_distance(sample, flda::MpLaw(0.0)),
                  std::invalid_argument);
}

TEST_CASE("ks_distance: shrinks with dimension at fixed gamma") {
  const flda::MpLaw law(0.5);
  auto median_ks = [&law](int d) {
    std::vector<double> values;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      values.push_back(flda::ks_distance(flda::wishart_spectrum(d, 2 * d, seed), law));
    }
    std::sort(values.begin(), values.end());
    return values[2];
  };
  CHECK(median_ks(1000) < median_ks(100));
}

TEST_CASE("pooled covariance spectrum: finite-rank centering is invisible") {
  const flda::MpLaw law(0.5);
  const auto plain = flda::wishart_spectrum(1000, 2000, 4);
  const auto pooled = flda::pooled_covariance_spectrum(1000, 2000, 3, 4);
  REQUIRE(pooled.eigenvalues.size() == 1000);
  const double gap =
      std::abs(flda::ks_distance(plain, law) - flda::ks_distance(pooled, law));
  CHECK(gap <= 0.02);
}

TEST_CASE("extreme_singular_check: near-square-free regime and ordering") {
  const auto thin = flda::extreme_singular_check(1000000, 1, 9);
  CHECK(std::abs(thin.first - 1.0) <= 0.01);
  CHECK(std::abs(thin.second - 1.0) <= 0.01);

  const auto rect = flda::extreme_singular_check(800, 200, 9);
  CHECK(rect.first >= rect.second);
  const auto again = flda::extreme_singular_check(800, 200, 9);
  CHECK(again.first == rect.first);
  CHECK(again.second == rect.second);

  CHECK_THROWS_AS(flda::extreme_singular_check(10, 11, 0), std::invalid_argument);
}

TEST_CASE("quadratic_form_check: low-gamma limit and determinism") {
  const auto [q1, q2] = flda::quadratic_form_check(50, 5000, 2, 2);
  CHECK(std::abs(q1 - 1.0) <= 0.05);
  CHECK(q2 >= q1 * q1 - 1e-12);  // Cauchy-Schwarz on the unit vector

  const auto repeat = flda::quadratic_form_check(50, 5000, 2, 2);
  CHECK(repeat.first == q1);
  CHECK(repeat.second == q2);

  CHECK_THROWS_AS(flda::quadratic_form_check(50, 40, 2, 0),
                  std::invalid_argument);
}
