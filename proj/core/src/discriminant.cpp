#include "flda/discriminant.hpp"

#include <algorithm>
#include <cmath>

#include "flda/bounds.hpp"

namespace flda {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

int SimDiag::rank(double rank_tol) const {
  if (population_lambdas.size() == 0 || population_lambdas(0) <= 0.0) {
    return 0;
  }
  int c = 0;
  while (c < population_lambdas.size() &&
         population_lambdas(c) > rank_tol * population_lambdas(0)) {
    ++c;
  }
  return c;
}

SimDiag simultaneous_diagonalize(const Mat& sigma, const Mat& s) {
  const SymEig sig_eig = sym_eig(sigma);
  const Vec& w = sig_eig.eigenvalues;
  if (!(w(0) > 0.0) || w(w.size() - 1) <= kPdTol * w(0)) {
    throw NumericsError("simultaneous_diagonalize: sigma is not positive definite");
  }

  // Whitening transform X0 = Q diag(w)^{-1/2}, then diagonalize X0^T s X0.
  const Mat x0 = sig_eig.eigenvectors * w.cwiseSqrt().cwiseInverse().asDiagonal();
  const SymEig inner = sym_eig(x0.transpose() * s * x0);

  SimDiag out;
  out.transform = x0 * inner.eigenvectors;
  out.population_lambdas = inner.eigenvalues;
  return out;
}

FldaModel fit_flda(const ScatterEstimates& est, int c) {
  const int max_c = static_cast<int>(est.class_means.size()) - 1;
  if (c < 1 || c > max_c) {
    throw std::invalid_argument("fit_flda: target dimension out of range");
  }
  const SimDiag sd = simultaneous_diagonalize(est.sample_cov, est.between_scatter);
  FldaModel model;
  model.projection = sd.transform.leftCols(c);
  model.emp_eigenvalues = sd.population_lambdas.head(c);
  return model;
}

double discrimination_power(const Mat& sigma, const Mat& s, const Mat& w) {
  const Mat a = w.transpose() * sigma * w;
  const Mat b = w.transpose() * s * w;
  return solve_spd(a, b).trace();
}

DeltaFactors delta_factors(const Mat& sigma, const Mat& s,
                           const ScatterEstimates& est) {
  const SimDiag sd = simultaneous_diagonalize(sigma, s);
  const int c = sd.rank();
  if (c < 1) {
    throw NumericsError("delta_factors: population between-class scatter is zero");
  }
  const Mat& x = sd.transform;

  const Mat sigma0 = x.transpose() * est.sample_cov * x;
  const Mat s0 = x.transpose() * est.between_scatter * x;

  const SymEig se = sym_eig(sigma0);
  const Vec& lam = se.eigenvalues;
  if (!(lam(0) > 0.0) || lam(lam.size() - 1) <= kPdTol * lam(0)) {
    throw NumericsError("delta_factors: normalized sample covariance is singular");
  }
  const Mat& u = se.eigenvectors;
  const Mat v1c = sym_eig(s0).eigenvectors.leftCols(c);

  const Vec lam_inv = lam.cwiseInverse();
  const Mat range_arg = lam_inv.asDiagonal() * (u.transpose() * v1c);
  const Mat r = orthonormal_range(range_arg);

  DeltaFactors out;
  out.deltas.resize(c);
  out.lambdas = sd.population_lambdas.head(c);
  out.theta1.resize(c);
  out.theta2.resize(c);

  for (int i = 0; i < c; ++i) {
    const Vec ue = u.row(i).transpose();  // U^T e_i
    out.deltas(i) = (r.transpose() * ue).squaredNorm();
    out.theta1(i) = std::acos(clamp01(v1c.row(i).norm()));

    Vec zeta = v1c * v1c.row(i).transpose();
    const double zn = zeta.norm();
    if (zn <= 0.0) {
      throw NumericsError("delta_factors: degenerate eigenvector projection");
    }
    zeta /= zn;
    const Vec xi = u.transpose() * zeta;
    const double q1 = xi.dot(lam_inv.cwiseProduct(xi));
    const double q2 = xi.dot(lam_inv.cwiseAbs2().cwiseProduct(xi));
    out.theta2(i) = std::acos(clamp01(q1 / std::sqrt(q2)));
  }
  return out;
}

DeltaFactors delta_factors(const HomoscedasticGaussianProblem& problem,
                           const ScatterEstimates& est) {
  return delta_factors(problem.covariance, between_scatter(problem.means), est);
}

double generalization_error(Vec w1, const Vec& mu_hat1, const Vec& mu_hat2,
                            const Vec& mu1, const Vec& mu2, const Mat& sigma) {
  const double scale2 = w1.dot(sigma * w1);
  if (!(scale2 > 0.0)) {
    throw std::invalid_argument("generalization_error: zero projection vector");
  }
  if (w1.dot(mu1 - mu2) < 0.0) {
    w1 = -w1;
  }
  const double scale = std::sqrt(scale2);
  const double threshold = 0.5 * w1.dot(mu_hat1 + mu_hat2);
  const double t1 = (w1.dot(mu1) - threshold) / scale;
  const double t2 = (threshold - w1.dot(mu2)) / scale;
  return 0.5 * normal_cdf(-t1) + 0.5 * normal_cdf(-t2);
}

double bayes_error(double lambda1) {
  if (lambda1 < 0.0) {
    throw std::invalid_argument("bayes_error: lambda1 must be nonnegative");
  }
  return normal_cdf(-std::sqrt(lambda1));
}

}  // namespace flda
