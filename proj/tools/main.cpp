// Command-line front end for the FLDA generalization-bound toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flda/bounds.hpp"
#include "flda/csv.hpp"
#include "flda/harness.hpp"
#include "flda/rmt.hpp"

namespace {

using nlohmann::json;

// Relative output paths are resolved against FLDA_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path == "-") {
    return path;
  }
  const char* base = std::getenv("FLDA_OUT_DIR");
  if (base != nullptr && *base != '\0' &&
      std::filesystem::path(path).is_relative()) {
    return (std::filesystem::path(base) / path).string();
  }
  return path;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(resolve_out(path), std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file '" + path + "'");
  }
  file << text;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    values.push_back(std::stod(token));
  }
  return values;
}

struct SimFlags {
  flda::ExperimentConfig cfg;
  std::string out;
  std::string summary_out;
};

void add_sim_flags(CLI::App* cmd, SimFlags& flags, bool with_classes) {
  cmd->add_option("--dim", flags.cfg.dim, "Data dimensionality D")
      ->capture_default_str();
  cmd->add_option("--n", flags.cfg.n, "Total training sample size N")
      ->capture_default_str();
  if (with_classes) {
    cmd->add_option("--classes", flags.cfg.class_count, "Number of classes")
        ->capture_default_str();
  }
  cmd->add_option("--trials", flags.cfg.trials, "Number of Monte Carlo trials")
      ->capture_default_str();
  cmd->add_option("--seed", flags.cfg.master_seed, "Master random seed")
      ->capture_default_str();
  cmd->add_option("--mean-scale", flags.cfg.mean_scale,
                  "Std. deviation of the random class means")
      ->capture_default_str();
  cmd->add_option("--threads", flags.cfg.threads,
                  "Worker threads (output is identical for any value)")
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "CSV output path ('-' for stdout)");
  cmd->add_option("--summary-out", flags.summary_out,
                  "JSON summary path (default stdout)");
}

json config_echo(const flda::ExperimentConfig& cfg) {
  json j;
  j["dim"] = cfg.dim;
  j["n"] = cfg.n;
  j["classes"] = cfg.class_count;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.master_seed;
  j["mean_scale"] = cfg.mean_scale;
  j["threads"] = cfg.threads;
  j["gamma"] = cfg.gamma();
  return j;
}

int run_simulate_power(const SimFlags& flags) {
  const auto records = flda::run_power_simulation(flags.cfg);
  std::ostringstream csv;
  flda::write_power_csv(csv, records);
  if (!flags.out.empty()) {
    write_text(flags.out, csv.str());
  }
  const auto summary = flda::summarize(records, flags.cfg.gamma());
  write_text(flags.summary_out,
             flda::summary_json(summary, config_echo(flags.cfg).dump()));
  return 0;
}

int run_simulate_error(const SimFlags& flags) {
  const auto records = flda::run_error_simulation(flags.cfg);
  std::ostringstream csv;
  flda::write_error_csv(csv, records);
  if (!flags.out.empty()) {
    write_text(flags.out, csv.str());
  }
  const auto summary = flda::summarize(records, flags.cfg.gamma());
  write_text(flags.summary_out,
             flda::summary_json(summary, config_echo(flags.cfg).dump()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fisher discriminant generalization-bound toolkit"};
  app.require_subcommand(1);

  // simulate-power
  SimFlags power_flags;
  auto* simulate_power = app.add_subcommand(
      "simulate-power",
      "Monte Carlo check of the discrimination power lower bound");
  add_sim_flags(simulate_power, power_flags, true);

  // simulate-error
  SimFlags error_flags;
  error_flags.cfg.class_count = 2;
  // Moderate class separation keeps the Bayes error away from the extreme
  // tail, where finite-size mean estimation dominates the asymptotic bound.
  error_flags.cfg.mean_scale = 0.15;
  auto* simulate_error = app.add_subcommand(
      "simulate-error", "Monte Carlo check of the binary error upper bound");
  add_sim_flags(simulate_error, error_flags, false);

  // rmt-check
  int rmt_dim = 1000;
  int rmt_n = 2000;
  int rmt_classes = 2;
  std::uint64_t rmt_seed = 0;
  std::string rmt_out;
  auto* rmt_check = app.add_subcommand(
      "rmt-check", "Spectral sanity checks of the random matrix limits");
  rmt_check->add_option("--dim", rmt_dim, "Matrix dimension D")
      ->capture_default_str();
  rmt_check->add_option("--n", rmt_n, "Sample size N")->capture_default_str();
  rmt_check->add_option("--classes", rmt_classes, "Classes in the pooled covariance")
      ->capture_default_str();
  rmt_check->add_option("--seed", rmt_seed, "Random seed")->capture_default_str();
  rmt_check->add_option("--out", rmt_out, "JSON report path (default stdout)");

  // curves
  std::string curve_gammas = "0.1,0.3,0.5,0.7,0.9";
  double lambda_max = 10.0;
  int lambda_steps = 100;
  std::string curves_out;
  auto* curves = app.add_subcommand(
      "curves", "Tabulate the power and error bounds over a lambda grid");
  curves->add_option("--gammas", curve_gammas, "Comma-separated gamma values")
      ->capture_default_str();
  curves->add_option("--lambda-max", lambda_max, "Largest lambda on the grid")
      ->capture_default_str();
  curves->add_option("--lambda-steps", lambda_steps, "Grid resolution")
      ->capture_default_str();
  curves->add_option("--out", curves_out, "CSV output path (default stdout)");

  // shared dataset flags
  struct DatasetFlags {
    std::string path;
    std::string label_column = "label";
    std::string delimiter = ",";
    bool no_header = false;
    int trials = 1000;
    std::uint64_t seed = 0;
    std::string out;
    std::string summary_out;
  };
  auto add_dataset_flags = [](CLI::App* cmd, DatasetFlags& flags) {
    cmd->add_option("--data", flags.path, "Input CSV file")->required();
    cmd->add_option("--label-column", flags.label_column,
                    "Label column name (or index without a header)")
        ->capture_default_str();
    cmd->add_option("--delimiter", flags.delimiter, "Field delimiter")
        ->capture_default_str();
    cmd->add_flag("--no-header", flags.no_header, "Input has no header row");
    cmd->add_option("--trials", flags.trials, "Number of subsampling trials")
        ->capture_default_str();
    cmd->add_option("--seed", flags.seed, "Master random seed")
        ->capture_default_str();
    cmd->add_option("--out", flags.out, "CSV output path ('-' for stdout)");
    cmd->add_option("--summary-out", flags.summary_out,
                    "JSON summary path (default stdout)");
  };

  DatasetFlags dataset_power_flags;
  auto* dataset_power = app.add_subcommand(
      "dataset-power", "Power-bound protocol on a user-supplied CSV dataset");
  add_dataset_flags(dataset_power, dataset_power_flags);

  DatasetFlags dataset_error_flags;
  double holdout_fraction = 0.1;
  int class_a = -1;
  int class_b = -1;
  auto* dataset_error = app.add_subcommand(
      "dataset-error", "Error-bound protocol on a user-supplied CSV dataset");
  add_dataset_flags(dataset_error, dataset_error_flags);
  dataset_error->add_option("--holdout", holdout_fraction,
                            "Holdout fraction for error estimation")
      ->capture_default_str();
  dataset_error->add_option("--class-a", class_a,
                            "First class of the pair (-1: random per trial)")
      ->capture_default_str();
  dataset_error->add_option("--class-b", class_b, "Second class of the pair")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate_power->parsed()) {
      return run_simulate_power(power_flags);
    }
    if (simulate_error->parsed()) {
      return run_simulate_error(error_flags);
    }
    if (rmt_check->parsed()) {
      const flda::MpLaw law(static_cast<double>(rmt_dim) / rmt_n);
      const auto spectrum =
          flda::pooled_covariance_spectrum(rmt_dim, rmt_n, rmt_classes, rmt_seed);
      const int m = static_cast<int>(
          std::lround(static_cast<double>(rmt_dim) * rmt_dim / rmt_n));
      const auto extremes = flda::extreme_singular_check(rmt_dim, m, rmt_seed);
      const auto [q1, q2] =
          flda::quadratic_form_check(rmt_dim, rmt_n, rmt_classes, rmt_seed);

      json report;
      report["dim"] = rmt_dim;
      report["n"] = rmt_n;
      report["classes"] = rmt_classes;
      report["seed"] = rmt_seed;
      report["gamma"] = law.gamma.gamma;
      report["ks_distance"] = flda::ks_distance(spectrum, law);
      report["min_eigenvalue"] = spectrum.eigenvalues(0);
      report["max_eigenvalue"] =
          spectrum.eigenvalues(spectrum.eigenvalues.size() - 1);
      report["support"] = {law.lambda_minus(), law.lambda_plus()};
      report["sigma_max_ratio"] = extremes.first;
      report["sigma_min_ratio"] = extremes.second;
      report["q1"] = q1;
      report["q1_limit"] =
          flda::mp_inverse_moment(1, law, flda::MomentMethod::analytic);
      report["q2"] = q2;
      report["q2_limit"] =
          flda::mp_inverse_moment(2, law, flda::MomentMethod::analytic);
      write_text(rmt_out, report.dump(2) + "\n");
      return 0;
    }
    if (curves->parsed()) {
      const auto gammas = parse_double_list(curve_gammas);
      std::vector<double> grid;
      for (int i = 1; i <= lambda_steps; ++i) {
        grid.push_back(lambda_max * i / lambda_steps);
      }
      std::ostringstream csv;
      flda::write_curves_csv(csv, flda::bound_curve(gammas, grid));
      write_text(curves_out, csv.str());
      return 0;
    }
    if (dataset_power->parsed() || dataset_error->parsed()) {
      const DatasetFlags& flags =
          dataset_power->parsed() ? dataset_power_flags : dataset_error_flags;
      flda::CsvOptions options;
      options.label_column = flags.label_column;
      options.has_header = !flags.no_header;
      if (flags.delimiter.size() != 1) {
        throw std::invalid_argument("delimiter must be a single character");
      }
      options.delimiter = flags.delimiter[0];
      const auto loaded = flda::load_csv_dataset(flags.path, options);
      for (const auto& warning : loaded.warnings) {
        std::cerr << "warning: " << warning << '\n';
      }

      json echo;
      echo["data"] = flags.path;
      echo["dim"] = loaded.data.dimension();
      echo["examples"] = loaded.data.size();
      echo["classes"] = loaded.data.class_count;
      echo["trials"] = flags.trials;
      echo["seed"] = flags.seed;

      if (dataset_power->parsed()) {
        const auto result =
            flda::run_real_data_power(loaded.data, flags.trials, flags.seed);
        echo["gamma"] = result.gamma_actual;
        echo["population_lambdas"] = result.population_lambdas;
        std::ostringstream csv;
        flda::write_power_csv(csv, result.records);
        if (!flags.out.empty()) {
          write_text(flags.out, csv.str());
        }
        const auto summary = flda::summarize(result.records, result.gamma_actual);
        write_text(flags.summary_out, flda::summary_json(summary, echo.dump()));
      } else {
        flda::RealDataErrorOptions options2;
        options2.trials = flags.trials;
        options2.holdout_fraction = holdout_fraction;
        options2.master_seed = flags.seed;
        options2.class_a = class_a;
        options2.class_b = class_b;
        const auto result = flda::run_real_data_error(loaded.data, options2);
        echo["gamma"] = result.gamma_actual;
        echo["holdout"] = holdout_fraction;
        std::ostringstream csv;
        flda::write_error_csv(csv, result.records);
        if (!flags.out.empty()) {
          write_text(flags.out, csv.str());
        }
        const auto summary = flda::summarize(result.records, result.gamma_actual);
        write_text(flags.summary_out, flda::summary_json(summary, echo.dump()));
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const flda::CsvError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
