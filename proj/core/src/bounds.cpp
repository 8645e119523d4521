#include "flda/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace flda {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Acklam's rational approximation, good to ~1.15e-9 on its own; used as the
// starting point for Newton refinement against normal_cdf.
double quantile_initial(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  }
  double x = quantile_initial(p);
  for (int iter = 0; iter < 3; ++iter) {
    const double err = normal_cdf(x) - p;
    const double dens = normal_pdf(x);
    if (dens <= 0.0) {
      break;
    }
    // Halley step.
    const double u = err / dens;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double varrho(double lambda1, Ratio gamma) {
  if (lambda1 < 0.0) {
    throw std::invalid_argument("varrho: lambda must be nonnegative");
  }
  const double g = gamma.gamma;
  if (g == 0.0) {
    return 1.0;
  }
  const double ratio = std::clamp(lambda1 / (lambda1 + g), 0.0, 1.0);
  const double a = std::acos(std::sqrt(ratio));
  const double b = std::acos(std::sqrt(std::clamp(1.0 - g, 0.0, 1.0)));
  return std::max(std::cos(a + b), 0.0);
}

double power_lower_bound(double lambda, Ratio gamma) {
  const double rho = varrho(lambda, gamma);
  return rho * rho * lambda;
}

double covariance_only_approx(double lambda, Ratio gamma) {
  if (lambda < 0.0) {
    throw std::invalid_argument("covariance_only_approx: lambda must be nonnegative");
  }
  return (1.0 - gamma.gamma) * lambda;
}

double error_upper_bound(double p_bayes, Ratio gamma) {
  if (!(p_bayes > 0.0 && p_bayes <= 0.5)) {
    throw std::invalid_argument("error_upper_bound: p_bayes must lie in (0, 0.5]");
  }
  const double q = normal_quantile(p_bayes);  // <= 0
  const double rho = varrho(q * q, gamma);
  return normal_cdf(rho * q);
}

double subspace_overlap_bound(double lambda_i, Ratio gamma) {
  if (lambda_i < 0.0) {
    throw std::invalid_argument("subspace_overlap_bound: lambda must be nonnegative");
  }
  if (lambda_i == 0.0 && gamma.gamma == 0.0) {
    return 0.0;
  }
  return lambda_i / (lambda_i + gamma.gamma);
}

std::vector<BoundCurvePoint> bound_curve(const std::vector<double>& gammas,
                                         const std::vector<double>& lambda_grid) {
  for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > lambda_grid[i - 1])) {
      throw std::invalid_argument("bound_curve: lambda grid must be ascending");
    }
  }
  std::vector<BoundCurvePoint> rows;
  rows.reserve(gammas.size() * lambda_grid.size());
  for (double g : gammas) {
    const Ratio ratio(g);
    for (double lambda : lambda_grid) {
      if (!(lambda > 0.0)) {
        throw std::invalid_argument("bound_curve: lambda grid must be positive");
      }
      BoundCurvePoint row;
      row.gamma = g;
      row.lambda = lambda;
      row.power_bound = power_lower_bound(lambda, ratio);
      row.p_bayes = normal_cdf(-std::sqrt(lambda));
      row.error_bound = error_upper_bound(row.p_bayes, ratio);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace flda
