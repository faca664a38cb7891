// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/cost_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace foglb::cost {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void TaskSpec::validate() const {
  const std::string tag = "task " + std::to_string(id) + ": ";
  if (!(dataSize >= 0.0)) throw std::invalid_argument(tag + "dataSize must be >= 0");
  if (!(instructionLength > 0.0)) {
    throw std::invalid_argument(tag + "instructionLength must be > 0");
  }
  if (!(deadline > 0.0)) throw std::invalid_argument(tag + "deadline must be > 0");
  if (!(arrival >= 0.0)) throw std::invalid_argument(tag + "arrival must be >= 0");
  for (double d : demand) {
    if (!(d >= 0.0)) throw std::invalid_argument(tag + "resource demand must be >= 0");
  }
}

void DeviceSpec::validate() const {
  const std::string tag = "device " + std::to_string(id) + ": ";
  for (double c : capacity) {
    if (!(c > 0.0)) throw std::invalid_argument(tag + "capacity components must be > 0");
  }
  if (!(energyBudget >= 0.0)) throw std::invalid_argument(tag + "energyBudget must be >= 0");
  if (!(dataSpeed > 0.0)) throw std::invalid_argument(tag + "dataSpeed must be > 0");
  if (!(mips > 0.0)) throw std::invalid_argument(tag + "mips must be > 0");
  if (!(cpuFrequency > 0.0)) throw std::invalid_argument(tag + "cpuFrequency must be > 0");
  if (!(energyBeta > 0.0)) throw std::invalid_argument(tag + "energyBeta must be > 0");
  if (availableTime && !(*availableTime > 0.0)) {
    throw std::invalid_argument(tag + "availableTime must be > 0");
  }
}

ProcessingTime processing_time(const TaskSpec& task, const DeviceSpec& dev) {
  require(dev.dataSpeed > 0.0, "device dataSpeed must be positive");
  require(dev.mips > 0.0, "device mips must be positive");
  ProcessingTime pt;
  pt.dataTime = task.dataSize / dev.dataSpeed;
  pt.instrTime = task.instructionLength / dev.mips;
  pt.procTime = pt.dataTime + pt.instrTime;
  return pt;
}

double response_time(double procTime, double deployTime) { return procTime + deployTime; }

double utilization_ratio(double procTime, double availableTime) {
  require(availableTime > 0.0, "availableTime must be positive");
  return procTime / availableTime;
}

double total_utilization(std::span<const double> ratios) {
  if (ratios.empty()) return 0.0;
  return std::accumulate(ratios.begin(), ratios.end(), 0.0) /
         static_cast<double>(ratios.size());
}

double energy_cost(const DeviceSpec& dev) {
  return dev.energyBeta * dev.cpuFrequency * dev.cpuFrequency * dev.cpuFrequency;
}

double allocation_ratio(const ResourceVector& demand, const ResourceVector& capacity) {
  double alpha = 0.0;
  for (std::size_t r = 0; r < kResourceCount; ++r) {
    require(capacity[r] > 0.0, "device capacity components must be positive");
    alpha += demand[r] / capacity[r];
  }
  return alpha;
}

double allocation_ratio(const TaskSpec& task, const DeviceSpec& dev) {
  return allocation_ratio(task.demand, dev.capacity);
}

double load_factor(std::span<const double> allocationRatios) {
  return 100.0 * std::accumulate(allocationRatios.begin(), allocationRatios.end(), 0.0);
}

double execution_cost(double rt, double maxRt, double ec, double maxEc) {
  require(maxRt > 0.0, "maximum response time must be positive");
  require(maxEc > 0.0, "maximum energy must be positive");
  return rt / maxRt + ec / maxEc;
}

void validate_weight_pair(double wq, double we) {
  if (!(wq >= 0.0) || !(we >= 0.0)) {
    throw std::invalid_argument("wq and we must be non-negative");
  }
  if (std::abs(wq + we - 1.0) > 1e-9) throw std::invalid_argument("wq + we must equal 1");
}

double device_weight(double rank, double procTime, double wq, double we) {
  require(procTime > 0.0, "processing time must be positive");
  validate_weight_pair(wq, we);
  return rank * wq + we / procTime;
}

}  // namespace foglb::cost
