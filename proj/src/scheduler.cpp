// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/scheduler.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <string>

namespace foglb::sched {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 5> kPolicyNames{{
    {PolicyKind::kAmclbt, "AMCLBT"},
    {PolicyKind::kRoundRobin, "ROUND_ROBIN"},
    {PolicyKind::kWeightedRoundRobin, "WEIGHTED_ROUND_ROBIN"},
    {PolicyKind::kRandom, "RANDOM"},
    {PolicyKind::kLeastLoaded, "LEAST_LOADED"},
}};

constexpr std::size_t kAmclbtCriteria = 6;

}  // namespace

DeviceState::DeviceState(DeviceSpec spec) : spec_(std::move(spec)), remaining_(spec_.capacity) {
  spec_.validate();
}

double DeviceState::recomputedLoadFactor() const {
  double sum = 0.0;
  for (const Allocation& a : live_) sum += a.alpha;
  return 100.0 * sum;
}

double DeviceState::remainingEnergy() const {
  return std::max(0.0, spec_.energyBudget - energyUsed_);
}

bool DeviceState::covers(const ResourceVector& demand) const {
  for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
    if (remaining_[r] < demand[r]) return false;
  }
  return true;
}

void DeviceState::allocate(const TaskSpec& task, double procTime, double finishTime,
                           double energy) {
  if (!covers(task.demand)) {
    throw std::logic_error("device " + std::to_string(id()) + " cannot hold task " +
                           std::to_string(task.id));
  }
  Allocation a{task.id, task.demand, cost::allocation_ratio(task.demand, spec_.capacity),
               procTime};
  for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
    remaining_[r] = std::max(0.0, remaining_[r] - task.demand[r]);
  }
  loadFactor_ += 100.0 * a.alpha;
  cumulativeLoad_ += 100.0 * a.alpha;
  busyUntil_ = std::max(busyUntil_, finishTime);
  energyUsed_ += energy;
  live_.push_back(a);
  assigned_.push_back(a);
}

void DeviceState::release(int taskId) {
  auto it = std::find_if(live_.begin(), live_.end(),
                         [taskId](const Allocation& a) { return a.taskId == taskId; });
  if (it == live_.end()) {
    throw std::logic_error("task " + std::to_string(taskId) + " holds nothing on device " +
                           std::to_string(id()));
  }
  for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
    remaining_[r] = std::min(spec_.capacity[r], remaining_[r] + it->demand[r]);
  }
  loadFactor_ -= 100.0 * it->alpha;
  live_.erase(it);
  if (live_.empty()) loadFactor_ = 0.0;
}

std::string_view to_string(PolicyKind kind) {
  for (const auto& [k, name] : kPolicyNames) {
    if (k == kind) return name;
  }
  return "UNKNOWN";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (const auto& [k, n] : kPolicyNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

void SchedulerPolicy::validate() const {
  if (kind == PolicyKind::kAmclbt) cost::validate_weight_pair(wq, we);
  for (double w : wrrWeights) {
    if (!(w > 0.0)) throw std::invalid_argument("round robin weights must be positive");
  }
}

std::vector<Candidate> evaluate_candidates(const TaskSpec& task,
                                           std::span<const DeviceState> devices, double now,
                                           const DeployModel& deploy) {
  std::vector<Candidate> out;
  const double deployTime = deploy.fog(devices.size());
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const DeviceState& dev = devices[i];
    if (!dev.covers(task.demand)) continue;
    const cost::ProcessingTime pt = cost::processing_time(task, dev.spec());
    const double queue = std::max(0.0, dev.busyUntil() - now);
    const double rt = queue + cost::response_time(pt.procTime, deployTime);
    if (rt > task.deadline) continue;
    out.push_back(Candidate{i, dev.id(), queue, deployTime, pt.procTime, rt,
                            cost::energy_cost(dev.spec()) * pt.procTime});
  }
  return out;
}

std::vector<int> feasible_set(const TaskSpec& task, std::span<const DeviceState> devices,
                              double now, const DeployModel& deploy) {
  std::vector<int> ids;
  for (const Candidate& c : evaluate_candidates(task, devices, now, deploy)) {
    ids.push_back(c.deviceId);
  }
  return ids;
}

double candidate_exec_cost(std::span<const Candidate> candidates, const Candidate& chosen) {
  double maxRt = 0.0, maxEc = 0.0;
  for (const Candidate& c : candidates) {
    maxRt = std::max(maxRt, c.responseTime);
    maxEc = std::max(maxEc, c.energy);
  }
  return cost::execution_cost(chosen.responseTime, maxRt, chosen.energy, maxEc);
}

AssignmentRecord commit(const TaskSpec& task, DeviceState& dev, const Candidate& chosen,
                        double now, double execCost) {
  AssignmentRecord rec;
  rec.taskId = task.id;
  rec.deviceId = dev.id();
  rec.assignTime = now;
  rec.startTime = now + chosen.queueDelay + chosen.deployTime;
  rec.finishTime = rec.startTime + chosen.procTime;
  rec.responseTime = rec.finishTime - now;
  rec.procTime = chosen.procTime;
  rec.execCost = execCost;
  rec.offloaded = false;
  dev.allocate(task, chosen.procTime, rec.finishTime, chosen.energy);
  return rec;
}

AssignmentRecord cloud_offload(const TaskSpec& task, const DeviceSpec& cloud, double now,
                               const DeployModel& deploy, std::size_t candidates) {
  const cost::ProcessingTime pt = cost::processing_time(task, cloud);
  const double deployTime = deploy.cloud(candidates);
  const double rt = cost::response_time(pt.procTime, deployTime);
  const double energy = cost::energy_cost(cloud) * pt.procTime;

  AssignmentRecord rec;
  rec.taskId = task.id;
  rec.deviceId = kCloudDeviceId;
  rec.assignTime = now;
  rec.startTime = now + deployTime;
  rec.finishTime = rec.startTime + pt.procTime;
  rec.responseTime = rt;
  rec.procTime = pt.procTime;
  // The sink is its own only candidate.
  rec.execCost = cost::execution_cost(rt, rt, energy, energy);
  rec.offloaded = true;
  return rec;
}

mcdm::CriteriaWeights amclbt_criteria(std::vector<double> weights) {
  if (weights.size() != kAmclbtCriteria) {
    throw std::invalid_argument("AMCLBT expects 6 criteria weights, got " +
                                std::to_string(weights.size()));
  }
  mcdm::CriteriaWeights w;
  w.weights = std::move(weights);
  w.directions.assign(kAmclbtCriteria, mcdm::Direction::kBenefit);
  w.directions.back() = mcdm::Direction::kCost;
  w.validate();
  return w;
}

AssignmentRecord amclbt_assign(const TaskSpec& task, std::span<DeviceState> devices,
                               const mcdm::CriteriaWeights& weights, double wq, double we,
                               double now, const SchedulerContext& ctx, bool normalizeSpeed) {
  weights.validate();
  if (weights.size() != kAmclbtCriteria) {
    throw std::invalid_argument("AMCLBT expects 6 criteria weights");
  }
  cost::validate_weight_pair(wq, we);

  const std::vector<Candidate> cands =
      evaluate_candidates(task, std::span<const DeviceState>(devices), now, ctx.deploy);
  if (cands.empty()) return cloud_offload(task, ctx.cloud, now, ctx.deploy, devices.size());

  // Current availability of each candidate, one crisp rating per criterion.
  mcdm::DecisionMatrix dm(cands.size(), kAmclbtCriteria);
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const DeviceState& dev = devices[cands[k].index];
    for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
      dm.at(k, r) = mcdm::Tfn::crisp(dev.remaining()[r]);
    }
    dm.at(k, cost::kResourceCount) = mcdm::Tfn::crisp(dev.remainingEnergy());
  }
  // A resource nobody has left cannot tell candidates apart.
  for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
    bool any = false;
    for (std::size_t k = 0; k < cands.size(); ++k) any = any || dm.at(k, r).u > 0.0;
    if (!any) {
      for (std::size_t k = 0; k < cands.size(); ++k) dm.at(k, r) = mcdm::Tfn::crisp(1.0);
    }
  }
  const mcdm::RankingResult ranking = mcdm::ftopsis_rank(dm, weights);

  std::vector<double> speed(cands.size());
  for (std::size_t k = 0; k < cands.size(); ++k) speed[k] = 1.0 / cands[k].procTime;
  if (normalizeSpeed) {
    const auto [lo, hi] = std::minmax_element(speed.begin(), speed.end());
    const double low = *lo, span = *hi - *lo;
    for (double& s : speed) s = span > 0.0 ? (s - low) / span : 1.0;
  }

  std::size_t best = 0;
  double bestScore = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const double score =
        normalizeSpeed ? ranking.closeness[k] * wq + speed[k] * we
                       : cost::device_weight(ranking.closeness[k], cands[k].procTime, wq, we);
    if (score > bestScore) {
      bestScore = score;
      best = k;
    }
  }

  const Candidate& chosen = cands[best];
  return commit(task, devices[chosen.index], chosen, now, candidate_exec_cost(cands, chosen));
}

AssignmentRecord baseline_assign(const SchedulerPolicy& policy, const TaskSpec& task,
                                 std::span<DeviceState> devices, double now,
                                 BaselineState& state, const SchedulerContext& ctx) {
  const std::vector<Candidate> cands =
      evaluate_candidates(task, std::span<const DeviceState>(devices), now, ctx.deploy);
  if (cands.empty()) return cloud_offload(task, ctx.cloud, now, ctx.deploy, devices.size());

  std::size_t pick = 0;  // index into cands
  switch (policy.kind) {
    case PolicyKind::kRoundRobin: {
      const std::size_t n = devices.size();
      std::vector<int> slot(n, -1);
      for (std::size_t k = 0; k < cands.size(); ++k) slot[cands[k].index] = static_cast<int>(k);
      for (std::size_t step = 0; step < n; ++step) {
        const std::size_t pos = (state.rrCursor + step) % n;
        if (slot[pos] >= 0) {
          pick = static_cast<std::size_t>(slot[pos]);
          state.rrCursor = (pos + 1) % n;
          break;
        }
      }
      break;
    }
    case PolicyKind::kWeightedRoundRobin: {
      // Smooth weighted round robin over the feasible devices.
      state.wrrCurrent.resize(devices.size(), 0.0);
      double total = 0.0;
      double bestCurrent = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cands.size(); ++k) {
        const DeviceState& dev = devices[cands[k].index];
        const auto id = static_cast<std::size_t>(dev.id());
        const double weight =
            id < policy.wrrWeights.size() ? policy.wrrWeights[id] : dev.spec().mips;
        total += weight;
        double& current = state.wrrCurrent[cands[k].index];
        current += weight;
        if (current > bestCurrent) {
          bestCurrent = current;
          pick = k;
        }
      }
      state.wrrCurrent[cands[pick].index] -= total;
      break;
    }
    case PolicyKind::kRandom: {
      std::uniform_int_distribution<std::size_t> draw(0, cands.size() - 1);
      pick = draw(state.rng());
      break;
    }
    case PolicyKind::kLeastLoaded: {
      double lowest = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cands.size(); ++k) {
        const double load = devices[cands[k].index].loadFactor();
        if (load < lowest) {
          lowest = load;
          pick = k;
        }
      }
      break;
    }
    case PolicyKind::kAmclbt:
      throw std::logic_error("AMCLBT is not a baseline policy");
  }

  const Candidate& chosen = cands[pick];
  return commit(task, devices[chosen.index], chosen, now, candidate_exec_cost(cands, chosen));
}

FogServer::FogServer(SchedulerPolicy policy, mcdm::CriteriaWeights weights, std::uint64_t seed)
    : policy_(std::move(policy)), weights_(std::move(weights)), state_(seed) {
  policy_.validate();
}

AssignmentRecord FogServer::assign(const TaskSpec& task, std::span<DeviceState> devices,
                                   double now, const SchedulerContext& ctx) {
  if (policy_.kind == PolicyKind::kAmclbt) {
    return amclbt_assign(task, devices, weights_, policy_.wq, policy_.we, now, ctx,
                         policy_.normalizeSpeed);
  }
  return baseline_assign(policy_, task, devices, now, state_, ctx);
}

}  // namespace foglb::sched
