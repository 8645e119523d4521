#include "flda/kernels.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace flda {

namespace detail {

void require_finite(const Mat& a, const char* what) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_symmetric(const Mat& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
}

// Largest-magnitude entry of each column made positive. Ties resolved by the
// first occurrence, which keeps the output deterministic for a fixed input.
void fix_signs(Mat& q) {
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    Eigen::Index imax = 0;
    q.col(j).cwiseAbs().maxCoeff(&imax);
    if (q(imax, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
}

}  // namespace detail

SymEig sym_eig(const Mat& a) {
  detail::require_finite(a, "sym_eig");
  detail::require_symmetric(a, "sym_eig");

  const Mat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.info() != Eigen::Success) {
    throw NumericsError("sym_eig: eigensolver failed to converge");
  }

  SymEig out;
  // Eigen returns ascending order; flip to descending.
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  detail::fix_signs(out.eigenvectors);
  return out;
}

Mat orthonormal_range(const Mat& a, double rank_tol) {
  detail::require_finite(a, "orthonormal_range");
  if (rank_tol <= 0.0) {
    throw std::invalid_argument("orthonormal_range: rank_tol must be positive");
  }

  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) {
    throw NumericsError("orthonormal_range: numerically zero matrix has no basis");
  }
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > rank_tol * sv(0)) {
    ++rank;
  }
  if (rank == 0) {
    throw NumericsError("orthonormal_range: numerically zero matrix has no basis");
  }
  return svd.matrixU().leftCols(rank);
}

Mat solve_spd(const Mat& a, const Mat& b) {
  detail::require_finite(a, "solve_spd");
  detail::require_symmetric(a, "solve_spd");
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("solve_spd: dimension mismatch between a and b");
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.transpose()));
  if (es.info() != Eigen::Success) {
    throw NumericsError("solve_spd: eigensolver failed to converge");
  }
  const Vec& w = es.eigenvalues();  // ascending
  const double wmax = w(w.size() - 1);
  if (!(wmax > 0.0) || w(0) <= kPdTol * wmax) {
    throw NumericsError("solve_spd: matrix is not positive definite");
  }
  return es.eigenvectors() * w.cwiseInverse().asDiagonal() *
         (es.eigenvectors().transpose() * b);
}

}  // namespace flda
