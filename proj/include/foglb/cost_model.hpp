// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_COST_MODEL_HPP
#define FOGLB_COST_MODEL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace foglb::cost {

/// Index into a five-resource vector.
enum Resource : std::size_t {
  kProcessing = 0,  // MIPS
  kCache = 1,       // MB
  kMemory = 2,      // MB
  kBandwidth = 3,   // Mbps
  kStorage = 4,     // MB
};
inline constexpr std::size_t kResourceCount = 5;

using ResourceVector = std::array<double, kResourceCount>;

struct TaskSpec {
  int id = 0;
  double dataSize = 0.0;           // MB
  double instructionLength = 1.0;  // million instructions
  ResourceVector demand{};
  double deadline = 1.0;           // s, relative to arrival
  double arrival = 0.0;            // s

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct DeviceSpec {
  int id = 0;
  int nodeId = 0;
  ResourceVector capacity{};
  double energyBudget = 0.0;  // J
  double dataSpeed = 1.0;     // MB/s
  double mips = 1.0;
  double cpuFrequency = 1.0;  // GHz
  double energyBeta = 0.1;    // J / GHz^3
  /// Window used for the utilization ratio. Unset means "the run's horizon".
  std::optional<double> availableTime;

  void validate() const;
};

struct ProcessingTime {
  double dataTime = 0.0;
  double instrTime = 0.0;
  double procTime = 0.0;
};

struct CostBreakdown {
  double dataTime = 0.0;
  double instrTime = 0.0;
  double procTime = 0.0;
  double deployTime = 0.0;
  double responseTime = 0.0;
  double energy = 0.0;
  double execCost = 0.0;
};

/// Data time d/v plus instruction time l/rho.
ProcessingTime processing_time(const TaskSpec& task, const DeviceSpec& dev);

double response_time(double procTime, double deployTime);

/// procTime / availableTime.
double utilization_ratio(double procTime, double availableTime);

/// Mean of the per-task ratios; zero for an idle device.
double total_utilization(std::span<const double> ratios);

/// beta * f^3. Read as power; multiply by a processing time for joules.
double energy_cost(const DeviceSpec& dev);

/// Sum over the five resources of demand / capacity.
double allocation_ratio(const TaskSpec& task, const DeviceSpec& dev);
double allocation_ratio(const ResourceVector& demand, const ResourceVector& capacity);

/// 100 * sum of allocation ratios. Not divided by the resource count, so a
/// device can exceed 100.
double load_factor(std::span<const double> allocationRatios);

/// rt / maxRt + ec / maxEc.
double execution_cost(double rt, double maxRt, double ec, double maxEc);

/// rank * wq + we / procTime. wq and we must be non-negative and sum to 1.
double device_weight(double rank, double procTime, double wq, double we);

/// Checks a (wq, we) pair; throws std::invalid_argument("wq + we must equal 1")
/// when the sum is off by more than 1e-9.
void validate_weight_pair(double wq, double we);

/// Deployment-time model: uplink latency plus a per-candidate scheduling
/// overhead, with an extra WAN penalty for work sent to the cloud.
struct DeployModel {
  double uplinkLatency = 0.05;      // s
  double overheadPerDevice = 0.001; // s per candidate device examined
  double wanPenalty = 0.5;          // s, cloud only

  double fog(std::size_t candidates) const {
    return uplinkLatency + overheadPerDevice * static_cast<double>(candidates);
  }
  double cloud(std::size_t candidates) const { return fog(candidates) + wanPenalty; }
};

}  // namespace foglb::cost

#endif  // FOGLB_COST_MODEL_HPP
