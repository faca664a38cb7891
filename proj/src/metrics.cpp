// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/metrics.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace foglb::sim {

double lb_variance(std::span<const double> loadFactors) {
  if (loadFactors.empty()) throw std::invalid_argument("load variance of an empty device set");
  const double n = static_cast<double>(loadFactors.size());
  const double mean = std::accumulate(loadFactors.begin(), loadFactors.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : loadFactors) ss += (x - mean) * (x - mean);
  return ss / n;
}

MetricsReport collect_metrics(std::span<const sched::AssignmentRecord> records,
                              std::span<const sched::DeviceState> devices, double horizon) {
  MetricsReport m;
  if (records.empty()) return m;

  double turnaround = 0.0;
  for (const sched::AssignmentRecord& r : records) {
    turnaround += r.finishTime - r.assignTime;
    if (r.offloaded) ++m.offloadCount;
  }
  m.avgTurnaround = turnaround / static_cast<double>(records.size());

  if (devices.empty()) return m;

  std::vector<double> loads, scaled;
  double utilization = 0.0;
  for (const sched::DeviceState& dev : devices) {
    const auto& tasks = dev.assigned();
    if (!tasks.empty()) m.devicesUsed += 1.0;
    loads.push_back(dev.cumulativeLoad());
    scaled.push_back(dev.cumulativeLoad() / static_cast<double>(cost::kResourceCount));

    const double window = dev.spec().availableTime.value_or(horizon);
    double ru = 0.0;
    if (!tasks.empty() && window > 0.0) {
      std::vector<double> ratios;
      ratios.reserve(tasks.size());
      for (const sched::Allocation& a : tasks) {
        ratios.push_back(cost::utilization_ratio(a.procTime, window));
      }
      ru = cost::total_utilization(ratios);
    }
    if (ru == 0.0) ++m.constraint16Violations;
    utilization += ru;
  }
  m.lbVariance = lb_variance(loads);
  m.lbVarianceNormalized = lb_variance(scaled);
  m.avgUtilization = utilization / static_cast<double>(devices.size());
  return m;
}

}  // namespace foglb::sim
