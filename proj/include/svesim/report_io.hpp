#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "svesim/schemes.hpp"

namespace svesim::io {

/// Shortest form is not used: every double is written with 17 significant digits.
std::string format_double(double v);

/// Header row of grid times, then one row per path.
void write_ensemble_csv(const std::filesystem::path& file, const PathEnsemble& e);

struct Column {
  std::string name;
  std::vector<double> values;
};

/// Column table; all columns must have the same length.
void write_table_csv(const std::filesystem::path& file, const std::vector<Column>& columns);

/// `key = value` lines in the given order.
void write_summary(const std::filesystem::path& file, const std::vector<std::pair<std::string, std::string>>& kv);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Polyline chart with axes, ticks and a legend.
void write_svg(const std::filesystem::path& file, const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace svesim::io
