// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/simulation.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace foglb::sim {

std::size_t Topology::deviceCount() const {
  std::size_t n = 0;
  for (const FogNode& node : nodes) n += node.devices.size();
  return n;
}

void Topology::validate() const {
  if (nodes.empty()) throw std::invalid_argument("topology has no fog nodes");
  int expected = 0;
  for (const FogNode& node : nodes) {
    if (node.devices.empty()) {
      throw std::invalid_argument("fog node " + std::to_string(node.id) + " has no devices");
    }
    const cost::DeviceSpec* server = nullptr;
    for (const cost::DeviceSpec& d : node.devices) {
      d.validate();
      if (d.id != expected++) {
        throw std::invalid_argument("device ids must be consecutive from 0 in node order");
      }
      if (d.nodeId != node.id) {
        throw std::invalid_argument("device " + std::to_string(d.id) + " names node " +
                                    std::to_string(d.nodeId) + " but sits in node " +
                                    std::to_string(node.id));
      }
      if (d.id == node.serverId) server = &d;
    }
    if (server == nullptr) {
      throw std::invalid_argument("fog server of node " + std::to_string(node.id) +
                                  " is not one of its devices");
    }
    for (const cost::DeviceSpec& d : node.devices) {
      for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
        if (d.capacity[r] > server->capacity[r]) {
          throw std::invalid_argument("fog server of node " + std::to_string(node.id) +
                                      " is smaller than device " + std::to_string(d.id));
        }
      }
    }
  }
  cloud.validate();
}

cost::DeviceSpec TopologySpec::default_cloud() {
  cost::DeviceSpec c;
  c.id = sched::kCloudDeviceId;
  c.nodeId = -1;
  c.capacity = {1e12, 1e12, 1e12, 1e12, 1e12};
  c.energyBudget = 0.0;
  c.dataSpeed = 500.0;
  c.mips = 20000.0;
  c.cpuFrequency = 3.0;
  c.energyBeta = 0.1;
  return c;
}

void TopologySpec::validate() const {
  if (deviceCount == 0) throw std::invalid_argument("topology.deviceCount must be >= 1");
  if (nodeCount == 0 || nodeCount > deviceCount) {
    throw std::invalid_argument("topology.nodes must be between 1 and the device count");
  }
  auto check = [](const Range& r, const char* name) {
    if (!(r.lo > 0.0) || r.lo > r.hi) {
      throw std::invalid_argument(std::string("topology.") + name + ": invalid range");
    }
  };
  for (const Range& r : capacity) check(r, "capacity");
  check(mips, "mips");
  check(dataSpeed, "dataSpeed");
  check(cpuFrequency, "cpuFrequency");
  if (!(energyBudget.lo >= 0.0) || energyBudget.lo > energyBudget.hi) {
    throw std::invalid_argument("topology.energyBudget: invalid range");
  }
  if (!(energyBeta > 0.0)) throw std::invalid_argument("topology.energyBeta must be > 0");
  if (availableTime && !(*availableTime > 0.0)) {
    throw std::invalid_argument("topology.availableTime must be > 0");
  }
  cloud.validate();
}

Topology generate_topology(const TopologySpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  auto draw = [&](const Range& r) {
    return r.lo == r.hi ? r.lo : std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
  };

  Topology topo;
  topo.cloud = spec.cloud;
  const std::size_t base = spec.deviceCount / spec.nodeCount;
  const std::size_t extra = spec.deviceCount % spec.nodeCount;
  int nextId = 0;
  for (std::size_t n = 0; n < spec.nodeCount; ++n) {
    FogNode node;
    node.id = static_cast<int>(n);
    const std::size_t size = base + (n < extra ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) {
      cost::DeviceSpec d;
      d.id = nextId++;
      d.nodeId = node.id;
      for (std::size_t r = 0; r < cost::kResourceCount; ++r) d.capacity[r] = draw(spec.capacity[r]);
      d.mips = draw(spec.mips);
      d.dataSpeed = draw(spec.dataSpeed);
      d.cpuFrequency = draw(spec.cpuFrequency);
      d.energyBudget = draw(spec.energyBudget);
      d.energyBeta = spec.energyBeta;
      d.availableTime = spec.availableTime;
      node.devices.push_back(d);
    }

    auto server = std::max_element(
        node.devices.begin(), node.devices.end(),
        [](const cost::DeviceSpec& a, const cost::DeviceSpec& b) { return a.mips < b.mips; });
    for (const cost::DeviceSpec& d : node.devices) {
      for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
        server->capacity[r] = std::max(server->capacity[r], d.capacity[r]);
      }
      server->dataSpeed = std::max(server->dataSpeed, d.dataSpeed);
    }
    node.serverId = server->id;
    topo.nodes.push_back(std::move(node));
  }
  return topo;
}

namespace {

struct Event {
  double time;
  EventKind kind;
  int taskId;
  int deviceId;  // completions only

  // Earliest first; completions before arrivals at equal times; then task id.
  bool operator>(const Event& o) const {
    return std::tie(time, kind, taskId) > std::tie(o.time, o.kind, o.taskId);
  }
};

}  // namespace

SimulationResult run_simulation(const Topology& topology, std::span<const cost::TaskSpec> tasks,
                                const sched::SchedulerPolicy& policy,
                                const mcdm::CriteriaWeights& weights, std::uint64_t seed,
                                const SimulationOptions& options) {
  topology.validate();
  policy.validate();
  for (const cost::TaskSpec& t : tasks) t.validate();

  SimulationResult result;
  std::vector<std::size_t> nodeStart;
  for (const FogNode& node : topology.nodes) {
    nodeStart.push_back(result.devices.size());
    for (const cost::DeviceSpec& d : node.devices) result.devices.emplace_back(d);
  }

  std::vector<sched::FogServer> servers;
  servers.reserve(topology.nodes.size());
  for (std::size_t n = 0; n < topology.nodes.size(); ++n) {
    servers.emplace_back(policy, weights, seed + n);
  }
  const sched::SchedulerContext ctx{topology.cloud, options.deploy};

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    events.push(Event{tasks[i].arrival, EventKind::kArrival, tasks[i].id, sched::kCloudDeviceId});
  }
  std::vector<std::pair<int, std::size_t>> index;  // task id -> position in `tasks`
  index.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) index.emplace_back(tasks[i].id, i);
  std::sort(index.begin(), index.end());
  for (std::size_t i = 1; i < index.size(); ++i) {
    if (index[i].first == index[i - 1].first) {
      throw std::invalid_argument("duplicate task id " + std::to_string(index[i].first));
    }
  }
  auto lookup = [&](int id) -> const cost::TaskSpec& {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(id, std::size_t{0}));
    return tasks[it->second];
  };

  const std::size_t nodeCount = topology.nodes.size();
  while (!events.empty()) {
    const Event ev = events.top();
    events.pop();
    if (ev.kind == EventKind::kCompletion) {
      result.devices[static_cast<std::size_t>(ev.deviceId)].release(ev.taskId);
    } else {
      const cost::TaskSpec& task = lookup(ev.taskId);
      const auto nodes = static_cast<long long>(nodeCount);
      const auto n = static_cast<std::size_t>(((task.id % nodes) + nodes) % nodes);
      std::span<sched::DeviceState> nodeDevices(result.devices.data() + nodeStart[n],
                                                topology.nodes[n].devices.size());
      sched::AssignmentRecord rec = servers[n].assign(task, nodeDevices, ev.time, ctx);
      if (!rec.offloaded) {
        events.push(Event{rec.finishTime, EventKind::kCompletion, rec.taskId, rec.deviceId});
      }
      result.horizon = std::max(result.horizon, rec.finishTime);
      result.records.push_back(rec);
    }
    if (options.observer) {
      options.observer(ev.kind, ev.time, std::span<const sched::DeviceState>(result.devices));
    }
  }

  result.metrics = collect_metrics(result.records, result.devices, result.horizon);
  return result;
}

}  // namespace foglb::sim
