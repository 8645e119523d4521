#include "flda/model.hpp"

#include <algorithm>
#include <cmath>

#include "flda/rng.hpp"

namespace flda {

std::vector<Eigen::Index> LabeledDataset::class_sizes() const {
  std::vector<Eigen::Index> counts(class_count, 0);
  for (int label : labels) {
    ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

bool LabeledDataset::balanced() const {
  const auto counts = class_sizes();
  return std::all_of(counts.begin(), counts.end(),
                     [&](Eigen::Index n) { return n == counts[0]; });
}

Mat between_scatter(const std::vector<Vec>& means) {
  if (means.size() < 2) {
    throw std::invalid_argument("between_scatter: need at least 2 means");
  }
  const Eigen::Index dim = means[0].size();
  for (const Vec& m : means) {
    if (m.size() != dim) {
      throw std::invalid_argument("between_scatter: mean length mismatch");
    }
  }

  Vec grand = Vec::Zero(dim);
  for (const Vec& m : means) {
    grand += m;
  }
  grand /= static_cast<double>(means.size());

  Mat s = Mat::Zero(dim, dim);
  for (const Vec& m : means) {
    const Vec d = m - grand;
    s.noalias() += d * d.transpose();
  }
  return s / static_cast<double>(means.size());
}

LabeledDataset sample_dataset(const HomoscedasticGaussianProblem& problem,
                              int per_class, std::uint64_t seed) {
  if (per_class < 1) {
    throw std::invalid_argument("sample_dataset: per_class must be >= 1");
  }
  const int dim = problem.dimension;
  const int classes = problem.class_count;

  // Symmetric square root of the covariance.
  const SymEig cov_eig = sym_eig(problem.covariance);
  Vec sqrt_w = cov_eig.eigenvalues;
  for (Eigen::Index i = 0; i < sqrt_w.size(); ++i) {
    sqrt_w(i) = std::sqrt(std::max(sqrt_w(i), 0.0));
  }
  const Mat root = cov_eig.eigenvectors * sqrt_w.asDiagonal() *
                   cov_eig.eigenvectors.transpose();

  LabeledDataset data;
  data.class_count = classes;
  data.samples.resize(dim, static_cast<Eigen::Index>(classes) * per_class);
  data.labels.resize(static_cast<std::size_t>(classes) * per_class);

  Eigen::Index col = 0;
  for (int k = 0; k < classes; ++k) {
    Rng rng(Rng::derive(seed, "sample", static_cast<std::uint64_t>(k)));
    for (int j = 0; j < per_class; ++j, ++col) {
      data.samples.col(col) = problem.means[static_cast<std::size_t>(k)] +
                              root * rng.normal_vec(dim);
      data.labels[static_cast<std::size_t>(col)] = k;
    }
  }
  return data;
}

ScatterEstimates estimate_scatters(const LabeledDataset& data) {
  const Eigen::Index dim = data.dimension();
  const Eigen::Index total = data.size();
  const int classes = data.class_count;
  const auto counts = data.class_sizes();
  for (Eigen::Index n : counts) {
    if (n < 2) {
      throw std::invalid_argument(
          "estimate_scatters: every class needs at least 2 examples");
    }
  }

  ScatterEstimates est;
  est.class_means.assign(static_cast<std::size_t>(classes), Vec::Zero(dim));
  for (Eigen::Index j = 0; j < total; ++j) {
    est.class_means[static_cast<std::size_t>(data.labels[j])] +=
        data.samples.col(j);
  }
  for (int k = 0; k < classes; ++k) {
    est.class_means[static_cast<std::size_t>(k)] /=
        static_cast<double>(counts[static_cast<std::size_t>(k)]);
  }

  Mat centered = data.samples;
  for (Eigen::Index j = 0; j < total; ++j) {
    centered.col(j) -= est.class_means[static_cast<std::size_t>(data.labels[j])];
  }
  est.sample_cov.noalias() =
      centered * centered.transpose() / static_cast<double>(total);

  est.between_scatter = between_scatter(est.class_means);
  est.grand_mean = Vec::Zero(dim);
  for (const Vec& m : est.class_means) {
    est.grand_mean += m;
  }
  est.grand_mean /= static_cast<double>(classes);
  return est;
}

HomoscedasticGaussianProblem random_problem(int dimension, int class_count,
                                            double mean_scale,
                                            std::uint64_t seed) {
  if (class_count < 2) {
    throw std::invalid_argument("random_problem: need at least 2 classes");
  }
  if (dimension < class_count) {
    throw std::invalid_argument("random_problem: dimension must be >= class_count");
  }

  HomoscedasticGaussianProblem problem;
  problem.dimension = dimension;
  problem.class_count = class_count;

  Rng cov_rng(Rng::derive(seed, "covariance"));
  const Mat a =
      cov_rng.normal_mat(dimension, dimension) / std::sqrt(double(dimension));
  problem.covariance = a * a.transpose() + 0.1 * Mat::Identity(dimension, dimension);

  Rng mean_rng(Rng::derive(seed, "means"));
  problem.means.reserve(static_cast<std::size_t>(class_count));
  for (int k = 0; k < class_count; ++k) {
    problem.means.push_back(mean_scale * mean_rng.normal_vec(dimension));
  }
  return problem;
}

}  // namespace flda
