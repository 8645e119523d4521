#ifndef FLDA_CSV_HPP_
#define FLDA_CSV_HPP_

#include <string>
#include <vector>

#include "flda/model.hpp"

namespace flda {

struct CsvOptions {
  std::string label_column = "label";  // column name, or an index if no header
  char delimiter = ',';
  bool has_header = true;
};

struct CsvDataset {
  LabeledDataset data;
  std::vector<std::string> label_names;     // class index -> original label
  std::vector<std::string> feature_names;   // after constant-column drops
  std::vector<std::string> warnings;        // e.g. dropped constant columns
};

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse a numeric CSV into a column-per-example dataset. Labels are mapped
/// to dense indices in first-appearance order; feature columns that are
/// constant across all examples are dropped with a warning.
CsvDataset load_csv_dataset(const std::string& path, const CsvOptions& options);

}  // namespace flda

#endif  // FLDA_CSV_HPP_
