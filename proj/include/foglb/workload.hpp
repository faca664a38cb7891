// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_WORKLOAD_HPP
#define FOGLB_WORKLOAD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "foglb/cost_model.hpp"

namespace foglb::sim {

/// Closed interval [lo, hi] for uniform draws.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  friend bool operator==(const Range&, const Range&) = default;
};

enum class WorkloadMode { kHomogeneous, kHeterogeneous };

std::string_view to_string(WorkloadMode mode);
/// "homogeneous" or "heterogeneous"; throws std::invalid_argument otherwise.
WorkloadMode parse_workload_mode(std::string_view name);

struct WorkloadSpec {
  std::size_t count = 0;
  WorkloadMode mode = WorkloadMode::kHeterogeneous;
  Range dataSize{1.0, 50.0};              // MB
  Range instructionLength{100.0, 2000.0}; // MI
  std::array<Range, cost::kResourceCount> demand{{
      {50.0, 200.0},   // processing, MIPS
      {2.0, 8.0},      // cache, MB
      {64.0, 256.0},   // memory, MB
      {5.0, 20.0},     // bandwidth, Mbps
      {100.0, 1000.0}, // storage, MB
  }};
  Range deadline{5.0, 30.0};  // s
  /// Poisson arrival rate in tasks per second; 0 puts every task at t = 0.
  double arrivalRate = 0.0;

  void validate() const;
};

/// Deterministic in (spec, seed). Tasks are drawn one after another, so a
/// longer workload from the same seed starts with the shorter one.
std::vector<cost::TaskSpec> generate_workload(const WorkloadSpec& spec, std::uint64_t seed);

}  // namespace foglb::sim

#endif  // FOGLB_WORKLOAD_HPP
