#include "flda/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "flda/discriminant.hpp"
#include "flda/rng.hpp"

namespace flda {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Static partition of [0, trials) over cfg.threads workers; every trial is
// seeded independently, so the schedule cannot change the output.
template <typename Fn>
void for_each_trial(int trials, int threads, Fn&& body) {
  threads = std::clamp(threads, 1, trials);
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) {
      body(t);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int t = w; t < trials; t += threads) {
        body(t);
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
}

/// Threshold rule perpendicular to the binary FLDA direction.
struct BinaryRule {
  Vec w;
  double threshold = 0.0;  // predict class 0 when w.x > threshold

  static BinaryRule train(const Mat& samples, const std::vector<int>& labels) {
    LabeledDataset train;
    train.samples = samples;
    train.labels = labels;
    train.class_count = 2;
    const ScatterEstimates est = estimate_scatters(train);
    BinaryRule rule;
    rule.w = solve_spd(est.sample_cov, est.class_means[0] - est.class_means[1]);
    rule.threshold = 0.5 * rule.w.dot(est.class_means[0] + est.class_means[1]);
    return rule;
  }

  double error(const Mat& samples, const std::vector<int>& labels) const {
    int wrong = 0;
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
      const int predicted = w.dot(samples.col(j)) > threshold ? 0 : 1;
      wrong += predicted != labels[static_cast<std::size_t>(j)];
    }
    return static_cast<double>(wrong) / static_cast<double>(samples.cols());
  }
};

Mat gather_columns(const Mat& samples, const std::vector<Eigen::Index>& idx) {
  Mat out(samples.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = samples.col(idx[j]);
  }
  return out;
}

/// Draw `count` indices from `pool` without replacement (partial
/// Fisher-Yates), preserving determinism of the stream.
std::vector<Eigen::Index> draw_without_replacement(
    std::vector<Eigen::Index> pool, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<std::vector<Eigen::Index>> indices_by_class(
    const LabeledDataset& data) {
  std::vector<std::vector<Eigen::Index>> by_class(
      static_cast<std::size_t>(data.class_count));
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    by_class[static_cast<std::size_t>(data.labels[j])].push_back(j);
  }
  return by_class;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dim < 2) {
    throw std::invalid_argument("config: dim must be >= 2");
  }
  if (n <= dim) {
    throw std::invalid_argument("config: n must exceed dim");
  }
  if (class_count < 2) {
    throw std::invalid_argument("config: classes must be >= 2");
  }
  if (n % class_count != 0) {
    throw std::invalid_argument("config: n must be divisible by the class count");
  }
  if (trials < 1) {
    throw std::invalid_argument("config: trials must be >= 1");
  }
  if (threads < 1) {
    throw std::invalid_argument("config: threads must be >= 1");
  }
}

std::vector<PowerTrialRecord> run_power_simulation(const ExperimentConfig& cfg) {
  cfg.validate();
  const Ratio gamma(cfg.gamma());
  const int per_class = cfg.n / cfg.class_count;

  std::vector<PowerTrialRecord> records(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.threads, [&](int t) {
    PowerTrialRecord& rec = records[static_cast<std::size_t>(t)];
    rec.trial = t;
    try {
      const auto problem = random_problem(
          cfg.dim, cfg.class_count, cfg.mean_scale,
          Rng::derive(cfg.master_seed, "trial", static_cast<std::uint64_t>(t)));
      const auto data = sample_dataset(
          problem, per_class,
          Rng::derive(cfg.master_seed, "data", static_cast<std::uint64_t>(t)));
      const auto est = estimate_scatters(data);
      const DeltaFactors df = delta_factors(problem, est);
      rec.components.resize(static_cast<std::size_t>(df.deltas.size()));
      for (Eigen::Index i = 0; i < df.deltas.size(); ++i) {
        auto& comp = rec.components[static_cast<std::size_t>(i)];
        comp.lambda = df.lambdas(i);
        comp.delta_lambda = df.deltas(i) * df.lambdas(i);
        comp.bound = power_lower_bound(df.lambdas(i), gamma);
      }
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
  });
  return records;
}

std::vector<ErrorTrialRecord> run_error_simulation(const ExperimentConfig& cfg) {
  ExperimentConfig binary = cfg;
  binary.class_count = 2;
  binary.validate();
  const Ratio gamma(binary.gamma());
  const int per_class = binary.n / 2;

  std::vector<ErrorTrialRecord> records(static_cast<std::size_t>(binary.trials));
  for_each_trial(binary.trials, binary.threads, [&](int t) {
    ErrorTrialRecord& rec = records[static_cast<std::size_t>(t)];
    rec.trial = t;
    try {
      const auto problem = random_problem(
          binary.dim, 2, binary.mean_scale,
          Rng::derive(binary.master_seed, "trial", static_cast<std::uint64_t>(t)));
      const auto data = sample_dataset(
          problem, per_class,
          Rng::derive(binary.master_seed, "data", static_cast<std::uint64_t>(t)));
      const auto est = estimate_scatters(data);
      const FldaModel model = fit_flda(est, 1);

      const SimDiag population = simultaneous_diagonalize(
          problem.covariance, between_scatter(problem.means));
      const double lambda1 = std::max(population.population_lambdas(0), 0.0);

      rec.p_bayes = bayes_error(lambda1);
      rec.p_gen = generalization_error(model.projection.col(0),
                                       est.class_means[0], est.class_means[1],
                                       problem.means[0], problem.means[1],
                                       problem.covariance);
      rec.p_bound = error_upper_bound(rec.p_bayes, gamma);
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
      rec.p_bayes = rec.p_gen = rec.p_bound = kNaN;
    }
  });
  return records;
}

RealDataPowerResult run_real_data_power(const LabeledDataset& data, int trials,
                                        std::uint64_t master_seed) {
  if (trials < 1) {
    throw std::invalid_argument("run_real_data_power: trials must be >= 1");
  }
  const int dim = static_cast<int>(data.dimension());
  const int classes = data.class_count;
  const int per_class = 2 * dim / classes;
  if (per_class < 2) {
    throw std::invalid_argument(
        "run_real_data_power: dataset too small for N = 2D subsampling");
  }
  const auto by_class = indices_by_class(data);
  for (const auto& idx : by_class) {
    if (idx.size() < static_cast<std::size_t>(per_class)) {
      throw std::invalid_argument(
          "run_real_data_power: insufficient per-class examples");
    }
  }

  // Full-data estimates act as the population.
  const ScatterEstimates population = estimate_scatters(data);
  const SimDiag sd = simultaneous_diagonalize(population.sample_cov,
                                              population.between_scatter);
  const int c = sd.rank();

  const int n_actual = per_class * classes;
  RealDataPowerResult result;
  result.gamma_actual = static_cast<double>(dim) / n_actual;
  const Ratio gamma(result.gamma_actual);
  for (int i = 0; i < c; ++i) {
    result.population_lambdas.push_back(sd.population_lambdas(i));
  }

  result.records.resize(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    PowerTrialRecord& rec = result.records[static_cast<std::size_t>(t)];
    rec.trial = t;
    try {
      Rng rng(Rng::derive(master_seed, "subsample", static_cast<std::uint64_t>(t)));
      LabeledDataset subset;
      subset.class_count = classes;
      subset.samples.resize(dim, n_actual);
      subset.labels.resize(static_cast<std::size_t>(n_actual));
      Eigen::Index col = 0;
      for (int k = 0; k < classes; ++k) {
        const auto chosen = draw_without_replacement(
            by_class[static_cast<std::size_t>(k)],
            static_cast<std::size_t>(per_class), rng);
        for (Eigen::Index j : chosen) {
          subset.samples.col(col) = data.samples.col(j);
          subset.labels[static_cast<std::size_t>(col)] = k;
          ++col;
        }
      }
      const auto est = estimate_scatters(subset);
      const DeltaFactors df =
          delta_factors(population.sample_cov, population.between_scatter, est);
      rec.components.resize(static_cast<std::size_t>(df.deltas.size()));
      for (Eigen::Index i = 0; i < df.deltas.size(); ++i) {
        auto& comp = rec.components[static_cast<std::size_t>(i)];
        comp.lambda = df.lambdas(i);
        comp.delta_lambda = df.deltas(i) * df.lambdas(i);
        comp.bound = power_lower_bound(df.lambdas(i), gamma);
      }
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
  }
  return result;
}

RealDataErrorResult run_real_data_error(const LabeledDataset& data,
                                        const RealDataErrorOptions& options) {
  if (options.trials < 1) {
    throw std::invalid_argument("run_real_data_error: trials must be >= 1");
  }
  if (!(options.holdout_fraction > 0.0 && options.holdout_fraction < 0.5)) {
    throw std::invalid_argument(
        "run_real_data_error: holdout_fraction must lie in (0, 0.5)");
  }
  const int classes = data.class_count;
  if ((options.class_a >= 0) != (options.class_b >= 0)) {
    throw std::invalid_argument(
        "run_real_data_error: class pair must be given together");
  }
  if (options.class_a >= 0 &&
      (options.class_a >= classes || options.class_b >= classes ||
       options.class_a == options.class_b)) {
    throw std::invalid_argument("run_real_data_error: invalid class pair");
  }

  const int dim = static_cast<int>(data.dimension());
  const int train_per_class = dim;  // N = 2D over two classes
  const auto by_class = indices_by_class(data);

  RealDataErrorResult result;
  result.gamma_actual = 0.5;
  const Ratio gamma(result.gamma_actual);

  result.records.resize(static_cast<std::size_t>(options.trials));
  for (int t = 0; t < options.trials; ++t) {
    ErrorTrialRecord& rec = result.records[static_cast<std::size_t>(t)];
    rec.trial = t;
    try {
      Rng rng(Rng::derive(options.master_seed, "error-trial",
                          static_cast<std::uint64_t>(t)));
      int a = options.class_a;
      int b = options.class_b;
      if (a < 0) {
        a = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes)));
        b = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes) - 1));
        if (b >= a) {
          ++b;
        }
      }

      // Stratified split: per class, shuffle and take the front as holdout.
      Mat eval_samples, pool_samples;
      std::vector<int> eval_labels, pool_labels;
      std::vector<std::vector<Eigen::Index>> pool_by_class(2);
      std::vector<Eigen::Index> eval_idx, pool_idx;
      const int pair[2] = {a, b};
      for (int side = 0; side < 2; ++side) {
        auto idx = by_class[static_cast<std::size_t>(pair[side])];
        const std::size_t class_size = idx.size();
        idx = draw_without_replacement(std::move(idx), class_size, rng);
        const std::size_t held = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::lround(options.holdout_fraction *
                               static_cast<double>(idx.size()))));
        if (idx.size() - held < static_cast<std::size_t>(train_per_class)) {
          throw std::invalid_argument(
              "run_real_data_error: too few training examples after holdout");
        }
        for (std::size_t i = 0; i < idx.size(); ++i) {
          if (i < held) {
            eval_idx.push_back(idx[i]);
            eval_labels.push_back(side);
          } else {
            pool_idx.push_back(idx[i]);
            pool_labels.push_back(side);
            pool_by_class[static_cast<std::size_t>(side)].push_back(idx[i]);
          }
        }
      }
      eval_samples = gather_columns(data.samples, eval_idx);
      pool_samples = gather_columns(data.samples, pool_idx);

      // "Bayes" rule: FLDA on the full training pool.
      const BinaryRule bayes_rule = BinaryRule::train(pool_samples, pool_labels);
      rec.p_bayes = bayes_rule.error(eval_samples, eval_labels);

      // Empirical rule: FLDA on an N = 2D stratified subset of the pool.
      std::vector<Eigen::Index> train_idx;
      std::vector<int> train_labels;
      for (int side = 0; side < 2; ++side) {
        const auto chosen = draw_without_replacement(
            pool_by_class[static_cast<std::size_t>(side)],
            static_cast<std::size_t>(train_per_class), rng);
        for (Eigen::Index j : chosen) {
          train_idx.push_back(j);
          train_labels.push_back(side);
        }
      }
      const BinaryRule empirical_rule =
          BinaryRule::train(gather_columns(data.samples, train_idx), train_labels);
      rec.p_gen = empirical_rule.error(eval_samples, eval_labels);

      // The corollary needs a Bayes error in (0, 0.5]; clamp the empirical
      // estimate into that range before composing the bound.
      const double eps = 1.0 / (2.0 * static_cast<double>(eval_labels.size()));
      const double p = std::clamp(rec.p_bayes, eps, 0.5);
      rec.p_bound = error_upper_bound(p, gamma);
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
      rec.p_bayes = rec.p_gen = rec.p_bound = kNaN;
    }
  }
  return result;
}

PowerSummary summarize(const std::vector<PowerTrialRecord>& records,
                       double gamma) {
  if (records.empty()) {
    throw std::invalid_argument("summarize: empty record set");
  }
  PowerSummary s;
  s.gamma = gamma;
  s.trials = static_cast<int>(records.size());
  long holding = 0;
  double sum_lambda = 0.0;
  double sum_delta_lambda = 0.0;
  s.min_margin = std::numeric_limits<double>::infinity();
  s.max_margin = -std::numeric_limits<double>::infinity();
  for (const auto& rec : records) {
    if (!rec.ok) {
      ++s.failed;
      continue;
    }
    for (const auto& comp : rec.components) {
      ++s.component_pairs;
      const double margin = comp.delta_lambda - comp.bound;
      holding += margin >= -kHoldingSlack;
      sum_lambda += comp.lambda;
      sum_delta_lambda += comp.delta_lambda;
      s.min_margin = std::min(s.min_margin, margin);
      s.max_margin = std::max(s.max_margin, margin);
    }
  }
  if (s.component_pairs > 0) {
    s.holding_fraction = static_cast<double>(holding) / s.component_pairs;
    s.mean_lambda = sum_lambda / s.component_pairs;
    s.mean_delta_lambda = sum_delta_lambda / s.component_pairs;
  }
  return s;
}

ErrorSummary summarize(const std::vector<ErrorTrialRecord>& records,
                       double gamma) {
  if (records.empty()) {
    throw std::invalid_argument("summarize: empty record set");
  }
  ErrorSummary s;
  s.gamma = gamma;
  s.trials = static_cast<int>(records.size());
  long holding = 0;
  long ok = 0;
  for (const auto& rec : records) {
    if (!rec.ok) {
      ++s.failed;
      continue;
    }
    ++ok;
    holding += rec.p_gen <= rec.p_bound + kHoldingSlack;
    s.mean_p_bayes += rec.p_bayes;
    s.mean_p_gen += rec.p_gen;
    s.mean_p_bound += rec.p_bound;
  }
  if (ok > 0) {
    s.holding_fraction = static_cast<double>(holding) / ok;
    s.mean_p_bayes /= ok;
    s.mean_p_gen /= ok;
    s.mean_p_bound /= ok;
  }
  return s;
}

void write_power_csv(std::ostream& os,
                     const std::vector<PowerTrialRecord>& records) {
  os << "trial,component,lambda,delta_lambda,bound\n";
  for (const auto& rec : records) {
    if (!rec.ok) {
      os << rec.trial << ",-1,nan,nan,nan\n";
      continue;
    }
    for (std::size_t i = 0; i < rec.components.size(); ++i) {
      const auto& comp = rec.components[i];
      os << rec.trial << ',' << i << ',' << fmt(comp.lambda) << ','
         << fmt(comp.delta_lambda) << ',' << fmt(comp.bound) << '\n';
    }
  }
}

void write_error_csv(std::ostream& os,
                     const std::vector<ErrorTrialRecord>& records) {
  os << "trial,p_bayes,p_gen,p_bound\n";
  for (const auto& rec : records) {
    os << rec.trial << ',' << fmt(rec.p_bayes) << ',' << fmt(rec.p_gen) << ','
       << fmt(rec.p_bound) << '\n';
  }
}

void write_curves_csv(std::ostream& os,
                      const std::vector<BoundCurvePoint>& rows) {
  os << "gamma,lambda,power_bound,p_bayes,error_bound\n";
  for (const auto& row : rows) {
    os << fmt(row.gamma) << ',' << fmt(row.lambda) << ',' << fmt(row.power_bound)
       << ',' << fmt(row.p_bayes) << ',' << fmt(row.error_bound) << '\n';
  }
}

std::string summary_json(const PowerSummary& summary,
                         const std::string& config_echo_json) {
  nlohmann::json j;
  j["gamma"] = summary.gamma;
  j["trials"] = summary.trials;
  j["failed_trials"] = summary.failed;
  j["component_pairs"] = summary.component_pairs;
  j["holding_fraction"] = summary.holding_fraction;
  j["mean_lambda"] = summary.mean_lambda;
  j["mean_delta_lambda"] = summary.mean_delta_lambda;
  j["min_margin"] = summary.min_margin;
  j["max_margin"] = summary.max_margin;
  if (!config_echo_json.empty()) {
    j["config"] = nlohmann::json::parse(config_echo_json);
  }
  return j.dump(2) + "\n";
}

std::string summary_json(const ErrorSummary& summary,
                         const std::string& config_echo_json) {
  nlohmann::json j;
  j["gamma"] = summary.gamma;
  j["trials"] = summary.trials;
  j["failed_trials"] = summary.failed;
  j["holding_fraction"] = summary.holding_fraction;
  j["mean_p_bayes"] = summary.mean_p_bayes;
  j["mean_p_gen"] = summary.mean_p_gen;
  j["mean_p_bound"] = summary.mean_p_bound;
  if (!config_echo_json.empty()) {
    j["config"] = nlohmann::json::parse(config_echo_json);
  }
  return j.dump(2) + "\n";
}

}  // namespace flda
