// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_ORACLE_HPP
#define FOGLB_ORACLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "foglb/scheduler.hpp"

namespace foglb::sched {

/// When every device must receive at least one task.
enum class UsageRule {
  kWhenEnoughTasks,  ///< enforced only if tasks >= devices
  kWaived,
};

inline constexpr std::size_t kOracleMaxTasks = 8;
inline constexpr std::size_t kOracleMaxDevices = 5;

/// Outcome of replaying a fixed task -> device mapping.
struct ReplayResult {
  bool feasible = false;  ///< every placement was a feasible candidate
  double totalCost = 0.0; ///< sum of per-task execution costs
  std::vector<AssignmentRecord> records;
};

/// Places `tasks` in list order on `devices[assignment[i]]`, all at time
/// zero and without releasing anything, using the same candidate evaluation
/// and cost normalization as the online policies. Stops at the first
/// placement that is not a feasible candidate.
ReplayResult replay_assignment(std::span<const TaskSpec> tasks,
                               std::span<const DeviceSpec> devices,
                               std::span<const std::size_t> assignment,
                               const DeployModel& deploy);

/// True when `assignment` uses every device, or the rule does not apply.
bool satisfies_usage(std::span<const std::size_t> assignment, std::size_t deviceCount,
                     UsageRule rule);

struct BruteForceResult {
  bool feasible = false;
  std::vector<std::size_t> assignment;  ///< device index per task
  double totalCost = 0.0;
};

/// Exhaustive minimum of the summed execution cost over all feasible
/// mappings. Ties keep the lexicographically smallest mapping. Throws
/// std::invalid_argument beyond 8 tasks or 5 devices.
BruteForceResult brute_force_assign(std::span<const TaskSpec> tasks,
                                    std::span<const DeviceSpec> devices,
                                    const DeployModel& deploy,
                                    UsageRule rule = UsageRule::kWhenEnoughTasks);

}  // namespace foglb::sched

#endif  // FOGLB_ORACLE_HPP
