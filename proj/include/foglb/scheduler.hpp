// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_SCHEDULER_HPP
#define FOGLB_SCHEDULER_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "foglb/cost_model.hpp"
#include "foglb/fuzzy_mcdm.hpp"

namespace foglb::sched {

using cost::DeployModel;
using cost::DeviceSpec;
using cost::ResourceVector;
using cost::TaskSpec;

/// Device id carried by records of tasks sent to the cloud sink.
inline constexpr int kCloudDeviceId = -1;

/// One task's claim on a device.
struct Allocation {
  int taskId = 0;
  ResourceVector demand{};
  double alpha = 0.0;     // allocation ratio on this device
  double procTime = 0.0;  // s
};

/// Mutable view of one fog device during a run. Resources are claimed when a
/// task is assigned and returned when it completes.
class DeviceState {
 public:
  explicit DeviceState(DeviceSpec spec);

  const DeviceSpec& spec() const { return spec_; }
  int id() const { return spec_.id; }
  const ResourceVector& remaining() const { return remaining_; }
  /// Allocations that have not been released yet.
  const std::vector<Allocation>& live() const { return live_; }
  /// Every task this device has ever been given, in assignment order.
  const std::vector<Allocation>& assigned() const { return assigned_; }
  double busyUntil() const { return busyUntil_; }
  /// 100 * sum of live allocation ratios, maintained incrementally.
  double loadFactor() const { return loadFactor_; }
  /// Same quantity recomputed from the live list.
  double recomputedLoadFactor() const;
  /// 100 * sum of allocation ratios over everything ever assigned.
  double cumulativeLoad() const { return cumulativeLoad_; }
  double energyUsed() const { return energyUsed_; }
  double remainingEnergy() const;

  bool covers(const ResourceVector& demand) const;

  void allocate(const TaskSpec& task, double procTime, double finishTime, double energy);
  /// Returns the resources held by `taskId`. Throws std::logic_error when the
  /// task holds nothing here.
  void release(int taskId);

 private:
  DeviceSpec spec_;
  ResourceVector remaining_;
  std::vector<Allocation> live_;
  std::vector<Allocation> assigned_;
  double busyUntil_ = 0.0;
  double loadFactor_ = 0.0;
  double cumulativeLoad_ = 0.0;
  double energyUsed_ = 0.0;
};

struct AssignmentRecord {
  int taskId = 0;
  int deviceId = kCloudDeviceId;
  double assignTime = 0.0;
  double startTime = 0.0;
  double finishTime = 0.0;
  double responseTime = 0.0;
  double procTime = 0.0;
  double execCost = 0.0;
  bool offloaded = false;

  friend bool operator==(const AssignmentRecord&, const AssignmentRecord&) = default;
};

enum class PolicyKind { kAmclbt, kRoundRobin, kWeightedRoundRobin, kRandom, kLeastLoaded };

std::string_view to_string(PolicyKind kind);
/// Accepts the canonical upper-case names (AMCLBT, ROUND_ROBIN, ...). Throws
/// std::invalid_argument for anything else.
PolicyKind parse_policy_kind(std::string_view name);

struct SchedulerPolicy {
  PolicyKind kind = PolicyKind::kAmclbt;
  double wq = 0.5;
  double we = 0.5;
  /// Min-max normalize 1/procTime over the candidates before weighting.
  bool normalizeSpeed = false;
  /// Weighted round robin weights by device id; missing entries fall back to
  /// the device's MIPS rating.
  std::vector<double> wrrWeights;

  void validate() const;
};

/// A device that can take the task right now, with the predicted costs.
struct Candidate {
  std::size_t index = 0;  // position in the device span
  int deviceId = 0;
  double queueDelay = 0.0;
  double deployTime = 0.0;
  double procTime = 0.0;
  double responseTime = 0.0;
  double energy = 0.0;
};

/// Devices whose remaining capacity covers the demand and whose predicted
/// response time (queue + deploy + processing) meets the deadline, in span
/// order.
std::vector<Candidate> evaluate_candidates(const TaskSpec& task,
                                           std::span<const DeviceState> devices, double now,
                                           const DeployModel& deploy);

/// Ids of the feasible devices.
std::vector<int> feasible_set(const TaskSpec& task, std::span<const DeviceState> devices,
                              double now, const DeployModel& deploy);

/// Task execution cost of `chosen`, normalized by the largest response time
/// and energy among `candidates`.
double candidate_exec_cost(std::span<const Candidate> candidates, const Candidate& chosen);

/// Claims resources on `dev` and returns the record.
AssignmentRecord commit(const TaskSpec& task, DeviceState& dev, const Candidate& chosen,
                        double now, double execCost);

/// Sends the task to the cloud sink; no fog state is touched. `candidates`
/// is the number of fog devices the scheduler examined first.
AssignmentRecord cloud_offload(const TaskSpec& task, const DeviceSpec& cloud, double now,
                               const DeployModel& deploy, std::size_t candidates);

/// Shared pieces every policy needs besides the device list.
struct SchedulerContext {
  DeviceSpec cloud;
  DeployModel deploy;
};

/// Sets the AMCLBT directions on a six-criterion weight vector: the five
/// remaining-capacity criteria are benefits, energy is a cost.
mcdm::CriteriaWeights amclbt_criteria(std::vector<double> weights);

/// Ranks feasible devices with fuzzy TOPSIS on their current availability,
/// combines rank and speed, and assigns the task to the best device. Ties go
/// to the lower device id. Offloads when nothing is feasible.
AssignmentRecord amclbt_assign(const TaskSpec& task, std::span<DeviceState> devices,
                               const mcdm::CriteriaWeights& weights, double wq, double we,
                               double now, const SchedulerContext& ctx,
                               bool normalizeSpeed = false);

/// Per-run state for the baseline policies.
class BaselineState {
 public:
  explicit BaselineState(std::uint64_t seed) : rng_(seed) {}

  std::size_t rrCursor = 0;
  std::vector<double> wrrCurrent;

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

AssignmentRecord baseline_assign(const SchedulerPolicy& policy, const TaskSpec& task,
                                 std::span<DeviceState> devices, double now,
                                 BaselineState& state, const SchedulerContext& ctx);

/// Owns the policy-specific state of one fog server and dispatches to the
/// right assignment routine.
class FogServer {
 public:
  FogServer(SchedulerPolicy policy, mcdm::CriteriaWeights weights, std::uint64_t seed);

  AssignmentRecord assign(const TaskSpec& task, std::span<DeviceState> devices, double now,
                          const SchedulerContext& ctx);

  const SchedulerPolicy& policy() const { return policy_; }

 private:
  SchedulerPolicy policy_;
  mcdm::CriteriaWeights weights_;
  BaselineState state_;
};

}  // namespace foglb::sched

#endif  // FOGLB_SCHEDULER_HPP
