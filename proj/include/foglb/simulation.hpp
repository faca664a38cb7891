// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_SIMULATION_HPP
#define FOGLB_SIMULATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "foglb/cost_model.hpp"
#include "foglb/fuzzy_mcdm.hpp"
#include "foglb/metrics.hpp"
#include "foglb/scheduler.hpp"
#include "foglb/workload.hpp"

namespace foglb::sim {

/// A cluster of fog devices run by one of them, the fog server.
struct FogNode {
  int id = 0;
  std::vector<cost::DeviceSpec> devices;
  int serverId = 0;
};

struct Topology {
  std::vector<FogNode> nodes;
  cost::DeviceSpec cloud;

  std::size_t deviceCount() const;
  /// Device ids must be 0..N-1 in node order, every node non-empty, and each
  /// fog server at least as large as its peers on every capacity component.
  void validate() const;
};

/// Ranges the generator draws device parameters from.
struct TopologySpec {
  std::size_t deviceCount = 5;
  std::size_t nodeCount = 1;
  std::array<Range, cost::kResourceCount> capacity{{
      {1000.0, 4000.0},   // processing, MIPS
      {64.0, 256.0},      // cache, MB
      {2048.0, 8192.0},   // memory, MB
      {100.0, 1000.0},    // bandwidth, Mbps
      {16000.0, 64000.0}, // storage, MB
  }};
  Range mips{500.0, 2000.0};
  Range dataSpeed{20.0, 100.0};     // MB/s
  Range cpuFrequency{1.0, 3.0};     // GHz
  Range energyBudget{5000.0, 10000.0};
  double energyBeta = 0.1;
  std::optional<double> availableTime;
  cost::DeviceSpec cloud = default_cloud();

  static cost::DeviceSpec default_cloud();
  void validate() const;
};

/// Devices are split into contiguous blocks, one per node. The device with
/// the highest MIPS in each node becomes its fog server and is raised to the
/// component-wise maximum of its peers.
Topology generate_topology(const TopologySpec& spec, std::uint64_t seed);

/// Which kind of event the observer is being told about.
enum class EventKind { kCompletion, kArrival };

struct SimulationOptions {
  cost::DeployModel deploy;
  /// Called after every processed event with the full device list.
  std::function<void(EventKind, double now, std::span<const sched::DeviceState>)> observer;
};

struct SimulationResult {
  MetricsReport metrics;
  std::vector<sched::AssignmentRecord> records;  ///< in processing order
  std::vector<sched::DeviceState> devices;       ///< final state, by device id
  double horizon = 0.0;
};

/// Event-driven run. Tasks arrive in (arrival, id) order and go to node
/// id % nodeCount, whose fog server applies `policy`. Completions at time t
/// are handled before arrivals at t. `weights` are the six AMCLBT criteria
/// weights (ignored by the baselines).
SimulationResult run_simulation(const Topology& topology, std::span<const cost::TaskSpec> tasks,
                                const sched::SchedulerPolicy& policy,
                                const mcdm::CriteriaWeights& weights, std::uint64_t seed,
                                const SimulationOptions& options = {});

}  // namespace foglb::sim

#endif  // FOGLB_SIMULATION_HPP
