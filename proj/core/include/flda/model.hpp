#ifndef FLDA_MODEL_HPP_
#define FLDA_MODEL_HPP_

#include <cstdint>
#include <vector>

#include "flda/kernels.hpp"

namespace flda {

/// Multi-class population: every class is Gaussian with its own mean and a
/// covariance shared across classes; priors are uniform.
struct HomoscedasticGaussianProblem {
  int dimension = 0;
  int class_count = 0;          // >= 2
  std::vector<Vec> means;       // class_count vectors of length dimension
  Mat covariance;               // symmetric positive definite
};

/// Column-per-example dataset with integer class labels.
struct LabeledDataset {
  Mat samples;                  // dimension x total examples
  std::vector<int> labels;      // length = samples.cols()
  int class_count = 0;

  Eigen::Index dimension() const { return samples.rows(); }
  Eigen::Index size() const { return samples.cols(); }
  std::vector<Eigen::Index> class_sizes() const;
  bool balanced() const;
};

/// Sample scatter statistics. The covariance divisor is N (the total
/// example count), not N - class_count.
struct ScatterEstimates {
  Mat sample_cov;               // pooled within-class covariance
  Mat between_scatter;          // scatter of the class means, rank <= c
  std::vector<Vec> class_means;
  Vec grand_mean;               // unweighted mean of the class means
};

/// S = (1/k) sum_i (m_i - mbar)(m_i - mbar)^T over k class means, with mbar
/// their unweighted average.
Mat between_scatter(const std::vector<Vec>& means);

/// Draw n iid examples per class. Deterministic given seed; per-class
/// streams are derived from (seed, "sample", class index).
LabeledDataset sample_dataset(const HomoscedasticGaussianProblem& problem,
                              int per_class, std::uint64_t seed);

/// Pooled covariance, between-class scatter and class means of a dataset.
/// Classes need not be balanced; every class must have >= 2 examples.
ScatterEstimates estimate_scatters(const LabeledDataset& data);

/// Random population for simulation runs: covariance A A^T / D + 0.1 I with
/// A a D x D standard normal draw, class means iid N(0, mean_scale^2 I).
HomoscedasticGaussianProblem random_problem(int dimension, int class_count,
                                            double mean_scale,
                                            std::uint64_t seed);

}  // namespace flda

#endif  // FLDA_MODEL_HPP_
