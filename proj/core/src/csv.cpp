#include "flda/csv.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace flda {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, delimiter)) {
    // Trim surrounding whitespace.
    const auto begin = cell.find_first_not_of(" \t\r");
    const auto end = cell.find_last_not_of(" \t\r");
    cells.push_back(begin == std::string::npos
                        ? std::string()
                        : cell.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == delimiter) {
    cells.emplace_back();
  }
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_number,
                    std::size_t column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw CsvError("line " + std::to_string(line_number) + ", column " +
                   std::to_string(column + 1) + ": non-numeric cell '" + cell +
                   "'");
  }
  return value;
}

}  // namespace

CsvDataset load_csv_dataset(const std::string& path, const CsvOptions& options) {
  std::ifstream file(path);
  if (!file) {
    throw CsvError("cannot open '" + path + "'");
  }

  std::string line;
  std::size_t line_number = 0;
  std::vector<std::string> header;
  if (options.has_header) {
    if (!std::getline(file, line)) {
      throw CsvError("empty file '" + path + "'");
    }
    ++line_number;
    header = split_line(line, options.delimiter);
  }

  // Resolve the label column: by name against the header, else by index.
  std::size_t label_index = std::string::npos;
  if (options.has_header) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == options.label_column) {
        label_index = j;
        break;
      }
    }
  }
  if (label_index == std::string::npos) {
    try {
      label_index = static_cast<std::size_t>(std::stoul(options.label_column));
    } catch (const std::exception&) {
      throw CsvError("label column '" + options.label_column + "' not found");
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string> label_names;
  std::map<std::string, int> label_ids;
  std::size_t width = std::string::npos;

  while (std::getline(file, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto cells = split_line(line, options.delimiter);
    if (width == std::string::npos) {
      width = cells.size();
      if (label_index >= width) {
        throw CsvError("label column index " + std::to_string(label_index) +
                       " out of range for " + std::to_string(width) +
                       " columns");
      }
    } else if (cells.size() != width) {
      throw CsvError("line " + std::to_string(line_number) + ": expected " +
                     std::to_string(width) + " cells, found " +
                     std::to_string(cells.size()));
    }

    const std::string& label_cell = cells[label_index];
    auto [it, inserted] =
        label_ids.emplace(label_cell, static_cast<int>(label_names.size()));
    if (inserted) {
      label_names.push_back(label_cell);
    }
    labels.push_back(it->second);

    std::vector<double> row;
    row.reserve(width - 1);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j == label_index) {
        continue;
      }
      row.push_back(parse_number(cells[j], line_number, j));
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    throw CsvError("no data rows in '" + path + "'");
  }
  if (label_names.size() < 2) {
    throw CsvError("fewer than 2 classes in '" + path + "'");
  }

  // Feature names, aligned with the row layout (label column removed).
  std::vector<std::string> feature_names;
  const std::size_t feature_count = rows[0].size();
  for (std::size_t j = 0, k = 0; j < width; ++j) {
    if (j == label_index) {
      continue;
    }
    feature_names.push_back(options.has_header && j < header.size()
                                ? header[j]
                                : "f" + std::to_string(j));
    ++k;
  }

  CsvDataset out;
  std::vector<bool> keep(feature_count, false);
  for (std::size_t j = 0; j < feature_count; ++j) {
    for (const auto& row : rows) {
      if (row[j] != rows[0][j]) {
        keep[j] = true;
        break;
      }
    }
    if (!keep[j]) {
      out.warnings.push_back("dropped constant feature column '" +
                             feature_names[j] + "'");
    }
  }

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < feature_count; ++j) {
    if (keep[j]) {
      kept.push_back(j);
    }
  }
  if (kept.empty()) {
    throw CsvError("all feature columns are constant in '" + path + "'");
  }

  out.data.samples.resize(static_cast<Eigen::Index>(kept.size()),
                          static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      out.data.samples(static_cast<Eigen::Index>(j),
                       static_cast<Eigen::Index>(i)) = rows[i][kept[j]];
    }
  }
  out.data.labels = std::move(labels);
  out.data.class_count = static_cast<int>(label_names.size());
  out.label_names = std::move(label_names);
  for (std::size_t j : kept) {
    out.feature_names.push_back(feature_names[j]);
  }
  return out;
}

}  // namespace flda
