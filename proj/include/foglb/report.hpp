// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_REPORT_HPP
#define FOGLB_REPORT_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "foglb/config.hpp"
#include "foglb/sweep.hpp"

namespace foglb::experiment {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Report columns, in order. The first twelve are fixed; the workload and
/// per-metric standard deviations follow.
const std::vector<std::string>& report_columns();

/// Header plus one LF-terminated line per row; reals with 6 decimals.
std::string to_csv(const std::vector<ReportRow>& rows);

std::string rows_to_json(const std::vector<ReportRow>& rows);
/// Inverse of rows_to_json. Throws ReportError on malformed input.
std::vector<ReportRow> rows_from_json(std::string_view text);

/// Plot data: for each (policy, workload, axis value) the mean of the
/// summary rows at that axis value. Axis is "taskCount" or "deviceCount".
struct SeriesPoint {
  std::string policy;
  std::string workload;
  std::size_t axisValue = 0;
  double mean = 0.0;
};
std::vector<SeriesPoint> plot_series(const std::vector<ReportRow>& rows, std::string_view metric,
                                     std::string_view axis);

/// Metrics that get a series file.
const std::vector<std::string>& series_metrics();

/// Writes report.csv or report.json plus series_<metric>_vs_<axis>.csv into
/// `dir`, creating it if needed. Returns the files written.
std::vector<std::filesystem::path> emit_report(const std::vector<ReportRow>& rows,
                                               ReportFormat format,
                                               const std::filesystem::path& dir);

}  // namespace foglb::experiment

#endif  // FOGLB_REPORT_HPP
