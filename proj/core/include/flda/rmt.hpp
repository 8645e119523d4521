#ifndef FLDA_RMT_HPP_
#define FLDA_RMT_HPP_

#include <cstdint>
#include <utility>

#include "flda/bounds.hpp"
#include "flda/kernels.hpp"

namespace flda {

/// Marcenko-Pastur law with aspect ratio gamma, supported on
/// [(1 - sqrt(gamma))^2, (1 + sqrt(gamma))^2].
struct MpLaw {
  Ratio gamma;

  explicit MpLaw(double g) : gamma(g) {}
  double lambda_minus() const;
  double lambda_plus() const;
};

/// Eigenvalue set of one random-matrix draw, sorted ascending.
struct SpectralSample {
  Vec eigenvalues;
  int dim = 0;
  int sample_size = 0;
};

/// Density of the MP law; zero outside the support. gamma = 0 is a point
/// mass at 1 and has no density (throws).
double mp_density(double lambda, const MpLaw& law);

/// CDF of the MP law by cached quadrature; the cache is built once per
/// gamma and immutable afterwards.
double mp_cdf(double lambda, const MpLaw& law);

enum class MomentMethod { analytic, quadrature };

/// Inverse moments of the MP law, order 1 or 2. Analytic closed forms are
/// 1/(1-gamma) and 1/(1-gamma)^3; quadrature integrates the density.
double mp_inverse_moment(int order, const MpLaw& law, MomentMethod method);

/// Ascending eigenvalues of (1/N) G G^T for a D x N standard Gaussian G.
SpectralSample wishart_spectrum(int dim, int sample_size, std::uint64_t seed);

/// Ascending eigenvalues of the normalized pooled within-class covariance
/// (divisor N) of `classes` groups of standard Gaussian draws.
SpectralSample pooled_covariance_spectrum(int dim, int sample_size, int classes,
                                          std::uint64_t seed);

/// Right-continuous empirical spectral distribution at lambda.
double esd_eval(const SpectralSample& sample, double lambda);

/// sup |F_N - F_gamma| over both one-sided gaps at each eigenvalue.
double ks_distance(const SpectralSample& sample, const MpLaw& law);

/// Normalized extreme singular values (sigma_max / sqrt(D), sigma_min /
/// sqrt(D)) of a D x m standard Gaussian draw, m <= D.
std::pair<double, double> extreme_singular_check(int dim, int m,
                                                 std::uint64_t seed);

/// Realized quadratic forms xi^T Lam^{-1} xi and xi^T Lam^{-2} xi over the
/// pooled covariance eigenvalues, averaged over a small batch of fresh
/// uniform unit vectors xi to suppress single-direction fluctuation.
std::pair<double, double> quadratic_form_check(int dim, int sample_size,
                                               int classes, std::uint64_t seed);

}  // namespace flda

#endif  // FLDA_RMT_HPP_
