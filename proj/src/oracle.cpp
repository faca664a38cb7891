// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace foglb::sched {

namespace {

constexpr double kTieEpsilon = 1e-12;

std::vector<DeviceState> fresh_states(std::span<const DeviceSpec> devices) {
  std::vector<DeviceState> states;
  states.reserve(devices.size());
  for (const DeviceSpec& d : devices) states.emplace_back(d);
  return states;
}

const Candidate* find_candidate(std::span<const Candidate> cands, std::size_t index) {
  for (const Candidate& c : cands) {
    if (c.index == index) return &c;
  }
  return nullptr;
}

struct Search {
  std::span<const TaskSpec> tasks;
  const DeployModel& deploy;
  bool enforceUsage;
  std::vector<DeviceState> states;
  std::vector<std::size_t> current;
  std::vector<std::size_t> useCount;
  std::size_t unused;
  BruteForceResult best;

  void visit(std::size_t depth, double partial) {
    if (best.feasible && partial >= best.totalCost - kTieEpsilon) return;
    if (enforceUsage && tasks.size() - depth < unused) return;
    if (depth == tasks.size()) {
      best.feasible = true;
      best.totalCost = partial;
      best.assignment = current;
      return;
    }
    const TaskSpec& task = tasks[depth];
    const std::vector<Candidate> cands =
        evaluate_candidates(task, std::span<const DeviceState>(states), 0.0, deploy);
    for (const Candidate& c : cands) {
      const double tc = candidate_exec_cost(cands, c);
      const DeviceState saved = states[c.index];
      commit(task, states[c.index], c, 0.0, tc);
      if (useCount[c.index]++ == 0) --unused;
      current.push_back(c.index);

      visit(depth + 1, partial + tc);

      current.pop_back();
      if (--useCount[c.index] == 0) ++unused;
      states[c.index] = saved;
    }
  }
};

}  // namespace

ReplayResult replay_assignment(std::span<const TaskSpec> tasks,
                               std::span<const DeviceSpec> devices,
                               std::span<const std::size_t> assignment,
                               const DeployModel& deploy) {
  if (assignment.size() != tasks.size()) {
    throw std::invalid_argument("assignment must name one device per task");
  }
  ReplayResult out;
  std::vector<DeviceState> states = fresh_states(devices);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::vector<Candidate> cands =
        evaluate_candidates(tasks[i], std::span<const DeviceState>(states), 0.0, deploy);
    const Candidate* chosen = find_candidate(cands, assignment[i]);
    if (chosen == nullptr) return out;
    const double tc = candidate_exec_cost(cands, *chosen);
    out.records.push_back(commit(tasks[i], states[chosen->index], *chosen, 0.0, tc));
    out.totalCost += tc;
  }
  out.feasible = true;
  return out;
}

bool satisfies_usage(std::span<const std::size_t> assignment, std::size_t deviceCount,
                     UsageRule rule) {
  if (rule == UsageRule::kWaived || assignment.size() < deviceCount) return true;
  std::vector<bool> used(deviceCount, false);
  for (std::size_t d : assignment) {
    if (d < deviceCount) used[d] = true;
  }
  return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
}

BruteForceResult brute_force_assign(std::span<const TaskSpec> tasks,
                                    std::span<const DeviceSpec> devices,
                                    const DeployModel& deploy, UsageRule rule) {
  if (tasks.size() > kOracleMaxTasks || devices.size() > kOracleMaxDevices) {
    throw std::invalid_argument("instance too large for exhaustive search (max 8 tasks x 5 devices)");
  }
  if (devices.empty() && !tasks.empty()) return BruteForceResult{};

  Search search{tasks,
                deploy,
                rule == UsageRule::kWhenEnoughTasks && tasks.size() >= devices.size(),
                fresh_states(devices),
                {},
                std::vector<std::size_t>(devices.size(), 0),
                devices.size(),
                {}};
  search.current.reserve(tasks.size());
  search.visit(0, 0.0);
  if (!search.best.feasible) {
    search.best.assignment.clear();
    search.best.totalCost = std::numeric_limits<double>::infinity();
  }
  return search.best;
}

}  // namespace foglb::sched
