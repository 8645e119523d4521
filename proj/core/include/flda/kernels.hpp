#ifndef FLDA_KERNELS_HPP_
#define FLDA_KERNELS_HPP_

#include <Eigen/Dense>
#include <stdexcept>

namespace flda {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Relative thresholds shared by every module. pd_tol is applied as
// pd_tol * lambda_max when testing positive definiteness; rank_tol as
// rank_tol * sigma_max when counting numerical rank.
inline constexpr double kPdTol = 1e-10;
inline constexpr double kRankTol = 1e-9;

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending,
/// eigenvector columns orthonormal and sign-fixed (largest-magnitude entry
/// of each column is positive) so the output is deterministic.
struct SymEig {
  Vec eigenvalues;   // non-increasing
  Mat eigenvectors;  // columns paired with eigenvalues
};

/// Symmetric eigendecomposition. The input is symmetrized as (a + a^T)/2
/// before factorization; a must already be symmetric up to
/// 1e-10 * (1 + max|a|).
SymEig sym_eig(const Mat& a);

/// Orthonormal basis of the column space of a. Columns with singular value
/// <= rank_tol * sigma_max are treated as numerically null. Throws
/// NumericsError if a is numerically zero.
Mat orthonormal_range(const Mat& a, double rank_tol = kRankTol);

/// Solve a * x = b for symmetric positive definite a. Positive definiteness
/// means lambda_min > kPdTol * lambda_max.
Mat solve_spd(const Mat& a, const Mat& b);

namespace detail {
void require_finite(const Mat& a, const char* what);
void require_symmetric(const Mat& a, const char* what);
}  // namespace detail

}  // namespace flda

#endif  // FLDA_KERNELS_HPP_
