// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/workload.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace foglb::sim {

namespace {

void check_range(const Range& r, const char* name, bool strictlyPositive) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw std::invalid_argument(std::string(name) + ": invalid range [" + std::to_string(r.lo) +
                                ", " + std::to_string(r.hi) + "]");
  }
  if (strictlyPositive ? !(r.lo > 0.0) : !(r.lo >= 0.0)) {
    throw std::invalid_argument(std::string(name) + ": lower bound out of range");
  }
}

double draw(std::mt19937_64& rng, const Range& r) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

}  // namespace

std::string_view to_string(WorkloadMode mode) {
  return mode == WorkloadMode::kHomogeneous ? "homogeneous" : "heterogeneous";
}

WorkloadMode parse_workload_mode(std::string_view name) {
  if (name == "homogeneous") return WorkloadMode::kHomogeneous;
  if (name == "heterogeneous") return WorkloadMode::kHeterogeneous;
  throw std::invalid_argument("unknown workload mode '" + std::string(name) + "'");
}

void WorkloadSpec::validate() const {
  check_range(dataSize, "dataSize", false);
  check_range(instructionLength, "instructionLength", true);
  static constexpr const char* kDemandNames[] = {"demand.processing", "demand.cache",
                                                 "demand.memory", "demand.bandwidth",
                                                 "demand.storage"};
  for (std::size_t r = 0; r < demand.size(); ++r) check_range(demand[r], kDemandNames[r], false);
  check_range(deadline, "deadline", true);
  if (!(arrivalRate >= 0.0) || !std::isfinite(arrivalRate)) {
    throw std::invalid_argument("arrivalRate must be >= 0");
  }
}

std::vector<cost::TaskSpec> generate_workload(const WorkloadSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::vector<cost::TaskSpec> tasks;
  tasks.reserve(spec.count);

  const bool homogeneous = spec.mode == WorkloadMode::kHomogeneous;
  auto value = [&](const Range& r) { return homogeneous ? r.mid() : draw(rng, r); };

  double clock = 0.0;
  for (std::size_t i = 0; i < spec.count; ++i) {
    cost::TaskSpec t;
    t.id = static_cast<int>(i);
    t.dataSize = value(spec.dataSize);
    t.instructionLength = value(spec.instructionLength);
    for (std::size_t r = 0; r < cost::kResourceCount; ++r) t.demand[r] = value(spec.demand[r]);
    t.deadline = value(spec.deadline);
    if (spec.arrivalRate > 0.0) {
      clock += std::exponential_distribution<double>(spec.arrivalRate)(rng);
    }
    t.arrival = clock;
    tasks.push_back(t);
  }
  return tasks;
}

}  // namespace foglb::sim
