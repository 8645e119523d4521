#ifndef FLDA_DISCRIMINANT_HPP_
#define FLDA_DISCRIMINANT_HPP_

#include <vector>

#include "flda/kernels.hpp"
#include "flda/model.hpp"

namespace flda {

/// Nonsingular X with X^T Sigma X = I and X^T S X = diag(lambda_1..lambda_c,
/// 0..0), lambdas sorted descending.
struct SimDiag {
  Mat transform;
  Vec population_lambdas;  // length D

  /// Count of lambdas above rank_tol * lambda_1 (the effective c).
  int rank(double rank_tol = kRankTol) const;
};

/// Fitted projection, scaled so W^T SampleCov W = I_c.
struct FldaModel {
  Mat projection;        // D x c
  Vec emp_eigenvalues;   // c values, non-increasing
};

/// Per-component attenuation factors of the generalization discrimination
/// power, with the angle diagnostics realized on the same trial. theta2 is
/// computed per component from the realized projection of the unit vector
/// zeta_i = normalized V_{1:c} V_{1:c}^T e_i.
struct DeltaFactors {
  Vec deltas;   // c values in [0, 1]
  Vec lambdas;  // population lambdas, descending
  Vec theta1;   // c angles
  Vec theta2;   // c angles
};

/// Simultaneous diagonalization of an SPD sigma and a PSD s: whiten by
/// sigma, then eigendecompose the whitened s.
SimDiag simultaneous_diagonalize(const Mat& sigma, const Mat& s);

/// Top-c generalized eigenvectors of (between scatter, sample covariance).
FldaModel fit_flda(const ScatterEstimates& est, int c);

/// Tr((w^T sigma w)^{-1} w^T s w); Fisher's criterion value of a projection.
double discrimination_power(const Mat& sigma, const Mat& s, const Mat& w);

/// Attenuation factors delta_i of the generalization discrimination power of
/// FLDA fitted on the given estimates against the stated population.
DeltaFactors delta_factors(const Mat& sigma, const Mat& s,
                           const ScatterEstimates& est);
DeltaFactors delta_factors(const HomoscedasticGaussianProblem& problem,
                           const ScatterEstimates& est);

/// Exact generalization error of the binary FLDA classifier with projection
/// w1 and estimated means mu_hat1/mu_hat2, against population means and
/// covariance. w1 is negated first if w1^T (mu1 - mu2) < 0.
double generalization_error(Vec w1, const Vec& mu_hat1, const Vec& mu_hat2,
                            const Vec& mu1, const Vec& mu2, const Mat& sigma);

/// Phi(-sqrt(lambda1)); the minimal achievable binary error.
double bayes_error(double lambda1);

}  // namespace flda

#endif  // FLDA_DISCRIMINANT_HPP_
