// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_CONFIG_HPP
#define FOGLB_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "foglb/cost_model.hpp"
#include "foglb/fuzzy_mcdm.hpp"
#include "foglb/scheduler.hpp"
#include "foglb/simulation.hpp"
#include "foglb/workload.hpp"

namespace foglb::experiment {

/// Invalid or unreadable experiment configuration. The message names the
/// offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat { kCsv, kJson };

std::string_view to_string(ReportFormat f);
ReportFormat parse_report_format(std::string_view name);

/// The six-criterion fog device comparison matrix (processing, cache,
/// memory, bandwidth, storage, energy). Printed judgments of 0.33 are read
/// as exactly 1/3.
std::vector<std::vector<double>> default_comparison_matrix();

inline const std::vector<std::size_t> kDeskTaskCounts{100, 200, 500};
inline const std::vector<std::size_t> kDeskDeviceCounts{5, 10, 15};
inline const std::vector<std::size_t> kFullTaskCounts{1000, 2000, 3000, 4000, 5000};
inline const std::vector<std::size_t> kFullDeviceCounts{5, 10, 15, 20, 25};

struct ExperimentPlan {
  /// deviceCount is overwritten by each sweep point.
  sim::TopologySpec topology;
  /// count is overwritten by each sweep point.
  std::vector<sim::WorkloadSpec> workloads;
  std::vector<sched::SchedulerPolicy> policies;
  std::vector<std::vector<double>> comparisonMatrix = default_comparison_matrix();
  mcdm::Fuzzification fuzzification = mcdm::Fuzzification::kSaaty;
  cost::DeployModel deploy;
  std::vector<std::size_t> taskCounts = kDeskTaskCounts;
  std::vector<std::size_t> deviceCounts = kDeskDeviceCounts;
  std::size_t replications = 10;
  std::uint64_t baseSeed = 20240601;
  std::string outputDir = "results";
  ReportFormat format = ReportFormat::kCsv;
  /// Fill the wallClockMs column. Off by default because timings make the
  /// report differ between otherwise identical runs.
  bool recordWallClock = false;
  /// Worker threads for the sweep; 0 picks the hardware concurrency.
  std::size_t jobs = 0;

  /// Plan with every default: desk grid, all five policies, heterogeneous
  /// and homogeneous workloads.
  static ExperimentPlan defaults();

  void useFullGrid();
  /// Throws ConfigError.
  void validate() const;
  /// FAHP weights of the comparison matrix with AMCLBT directions.
  mcdm::CriteriaWeights criteriaWeights() const;
};

/// Reads a JSON config file; every key is optional. Throws ConfigError.
ExperimentPlan parse_config(const std::filesystem::path& path);
ExperimentPlan parse_config_text(std::string_view text);

/// The plan with every default filled in, as JSON. Feeding it back through
/// parse_config_text yields the same plan.
std::string dump_plan(const ExperimentPlan& plan);

/// Parses a matrix given as a JSON array of rows, or an object with a
/// "matrix" key. Entries may be numbers or fraction strings like "1/3".
std::vector<std::vector<double>> parse_matrix_text(std::string_view text);

}  // namespace foglb::experiment

#endif  // FOGLB_CONFIG_HPP
