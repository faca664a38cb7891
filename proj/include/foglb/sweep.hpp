// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_SWEEP_HPP
#define FOGLB_SWEEP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foglb/config.hpp"

namespace foglb::experiment {

struct MetricValues {
  double devicesUsed = 0.0;
  double lbVariance = 0.0;
  double avgUtilization = 0.0;
  double avgTurnaround = 0.0;
  double offloadCount = 0.0;
  double constraint16Violations = 0.0;

  friend bool operator==(const MetricValues&, const MetricValues&) = default;
};

/// One line of the report. Replication rows carry a seed; summary rows have
/// runId "summary", no seed, replication means in `values` and population
/// standard deviations in `stddev`.
struct ReportRow {
  std::string runId;
  std::string policy;
  std::string workload;
  std::size_t taskCount = 0;
  std::size_t deviceCount = 0;
  std::optional<std::uint64_t> seed;
  MetricValues values;
  double wallClockMs = 0.0;
  std::optional<MetricValues> stddev;

  bool isSummary() const { return !seed.has_value(); }
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// A failed sweep cell. The message starts with the cell identifier.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows for workloads x policies x taskCounts x deviceCounts, each cell
/// holding `replications` rows followed by one summary row.
std::size_t expected_row_count(const ExperimentPlan& plan);

/// Seed of replication r at a sweep point. Policies share it, so every
/// policy sees the same topology and tasks.
std::uint64_t instance_seed(const ExperimentPlan& plan, std::size_t workload, std::size_t taskIdx,
                            std::size_t deviceIdx, std::size_t replication);

/// Runs every cell on `plan.jobs` threads. Row order depends only on the plan.
std::vector<ReportRow> run_sweep(const ExperimentPlan& plan);

/// Mean and population standard deviation over replication rows.
ReportRow summarize(const std::vector<ReportRow>& replications);

}  // namespace foglb::experiment

#endif  // FOGLB_SWEEP_HPP
