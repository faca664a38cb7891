// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_METRICS_HPP
#define FOGLB_METRICS_HPP

#include <cstddef>
#include <span>

#include "foglb/scheduler.hpp"

namespace foglb::sim {

struct MetricsReport {
  /// Fog devices that ran at least one task.
  double devicesUsed = 0.0;
  /// Population variance of each device's load factor over the whole run.
  double lbVariance = 0.0;
  /// Same variance with every load divided by the resource count (0..100
  /// scale). Not part of the original metric set.
  double lbVarianceNormalized = 0.0;
  /// Mean over devices of the per-device utilization.
  double avgUtilization = 0.0;
  /// Mean of finish - submission over all tasks, fog and cloud.
  double avgTurnaround = 0.0;
  std::size_t offloadCount = 0;
  /// Devices that ended the run without a task (zero utilization).
  std::size_t constraint16Violations = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Population variance. Throws std::invalid_argument on an empty list.
double lb_variance(std::span<const double> loadFactors);

/// Metrics of a finished run. Each device's utilization window is its
/// configured available time, or `horizon` when none is set.
MetricsReport collect_metrics(std::span<const sched::AssignmentRecord> records,
                              std::span<const sched::DeviceState> devices, double horizon);

}  // namespace foglb::sim

#endif  // FOGLB_METRICS_HPP
