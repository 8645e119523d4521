#ifndef FLDA_BOUNDS_HPP_
#define FLDA_BOUNDS_HPP_

#include <stdexcept>
#include <vector>

namespace flda {

/// Limiting dimensionality to sample size ratio, restricted to [0, 1).
struct Ratio {
  double gamma = 0.0;

  explicit Ratio(double g) : gamma(g) {
    if (!(g >= 0.0 && g < 1.0)) {
      throw std::invalid_argument("Ratio: gamma must lie in [0, 1)");
    }
  }
};

/// Standard Gaussian CDF, absolute error below 1e-10.
double normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

/// Asymptotic lower bound on one component of the generalization
/// discrimination power: max^2{cos(acos(sqrt(l/(l+g))) + acos(sqrt(1-g))), 0} * l.
double power_lower_bound(double lambda, Ratio gamma);

/// (1 - gamma) * lambda; the covariance-estimation-only loss in the regime
/// of large lambda.
double covariance_only_approx(double lambda, Ratio gamma);

/// The cosine factor of power_lower_bound; varrho^2 * lambda equals the
/// power bound identically.
double varrho(double lambda1, Ratio gamma);

/// Asymptotic upper bound on the binary generalization error in terms of the
/// Bayes error: Phi(varrho * Phi^{-1}(p_bayes)).
double error_upper_bound(double p_bayes, Ratio gamma);

/// Asymptotic lower bound on the squared overlap between the i-th empirical
/// and population discriminant directions: lambda_i / (lambda_i + gamma).
double subspace_overlap_bound(double lambda_i, Ratio gamma);

/// One row of a Figure-style bound table.
struct BoundCurvePoint {
  double gamma;
  double lambda;
  double power_bound;
  double p_bayes;
  double error_bound;
};

std::vector<BoundCurvePoint> bound_curve(const std::vector<double>& gammas,
                                         const std::vector<double>& lambda_grid);

}  // namespace flda

#endif  // FLDA_BOUNDS_HPP_
