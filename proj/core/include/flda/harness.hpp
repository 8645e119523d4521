#ifndef FLDA_HARNESS_HPP_
#define FLDA_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flda/bounds.hpp"
#include "flda/model.hpp"

namespace flda {

struct ExperimentConfig {
  int dim = 50;
  int n = 100;           // total training examples; gamma is always dim / n
  int class_count = 5;
  int trials = 1000;
  std::uint64_t master_seed = 0;
  double mean_scale = 1.0;
  int threads = 1;

  double gamma() const { return static_cast<double>(dim) / n; }
  void validate() const;
};

struct PowerComponent {
  double lambda = 0.0;
  double delta_lambda = 0.0;
  double bound = 0.0;
};

struct PowerTrialRecord {
  int trial = 0;
  std::vector<PowerComponent> components;
  bool ok = true;
  std::string error;
};

struct ErrorTrialRecord {
  int trial = 0;
  double p_bayes = 0.0;
  double p_gen = 0.0;
  double p_bound = 0.0;
  bool ok = true;
  std::string error;
};

// Slack used when counting a bound as holding.
inline constexpr double kHoldingSlack = 1e-8;

struct PowerSummary {
  double gamma = 0.0;
  int trials = 0;
  int failed = 0;
  long component_pairs = 0;
  double holding_fraction = 0.0;
  double mean_lambda = 0.0;
  double mean_delta_lambda = 0.0;
  double min_margin = 0.0;  // min over pairs of delta_lambda - bound
  double max_margin = 0.0;
};

struct ErrorSummary {
  double gamma = 0.0;
  int trials = 0;
  int failed = 0;
  double holding_fraction = 0.0;
  double mean_p_bayes = 0.0;
  double mean_p_gen = 0.0;
  double mean_p_bound = 0.0;
};

/// Figure-2 style simulation: fresh random population per trial, one record
/// of (lambda_i, delta_i lambda_i, bound_i) per component. Trials are
/// independent; per-trial seeds are derived from (master_seed, trial), so
/// the output is identical under any thread count.
std::vector<PowerTrialRecord> run_power_simulation(const ExperimentConfig& cfg);

/// Figure-4 style simulation: binary problems, analytic generalization error
/// per trial against the Corollary-style upper bound.
std::vector<ErrorTrialRecord> run_error_simulation(const ExperimentConfig& cfg);

/// Real-data protocol: full-dataset scatter estimates act as population
/// parameters; each trial subsamples N = 2D examples (stratified, equal
/// per-class counts) and records delta_i lambda_i against the bound at the
/// realized gamma.
struct RealDataPowerResult {
  std::vector<PowerTrialRecord> records;
  std::vector<double> population_lambdas;
  double gamma_actual = 0.0;
};
RealDataPowerResult run_real_data_power(const LabeledDataset& data, int trials,
                                        std::uint64_t master_seed);

/// Real-data binary protocol: a stratified holdout estimates both the
/// "Bayes" classifier (FLDA on all remaining data) and the empirical
/// classifier (FLDA on an N = 2D subset); the bound is computed from the
/// measured "Bayes" error.
struct RealDataErrorOptions {
  int trials = 1000;
  double holdout_fraction = 0.1;
  std::uint64_t master_seed = 0;
  int class_a = -1;  // -1: pick a random pair per trial
  int class_b = -1;
};
struct RealDataErrorResult {
  std::vector<ErrorTrialRecord> records;
  double gamma_actual = 0.0;
};
RealDataErrorResult run_real_data_error(const LabeledDataset& data,
                                        const RealDataErrorOptions& options);

PowerSummary summarize(const std::vector<PowerTrialRecord>& records,
                       double gamma);
ErrorSummary summarize(const std::vector<ErrorTrialRecord>& records,
                       double gamma);

// CSV / JSON emission. Numeric formatting is fixed ("%.12g") so identical
// runs produce identical bytes.
void write_power_csv(std::ostream& os,
                     const std::vector<PowerTrialRecord>& records);
void write_error_csv(std::ostream& os,
                     const std::vector<ErrorTrialRecord>& records);
void write_curves_csv(std::ostream& os,
                      const std::vector<BoundCurvePoint>& rows);
std::string summary_json(const PowerSummary& summary,
                         const std::string& config_echo_json);
std::string summary_json(const ErrorSummary& summary,
                         const std::string& config_echo_json);

}  // namespace flda

#endif  // FLDA_HARNESS_HPP_
