// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "foglb/simulation.hpp"
#include "foglb/workload.hpp"

namespace foglb::experiment {

namespace {

constexpr std::uint64_t kTopologySalt = 0x5851F42D4C957F2DULL;

struct Cell {
  std::size_t workload, policy, task, device;
};

std::string cell_name(const ExperimentPlan& plan, const Cell& c) {
  return std::string(sim::to_string(plan.workloads[c.workload].mode)) + "/" +
         std::string(sched::to_string(plan.policies[c.policy].kind)) + "/t" +
         std::to_string(plan.taskCounts[c.task]) + "/d" + std::to_string(plan.deviceCounts[c.device]);
}

MetricValues to_values(const sim::MetricsReport& m) {
  return {m.devicesUsed,
          m.lbVariance,
          m.avgUtilization,
          m.avgTurnaround,
          static_cast<double>(m.offloadCount),
          static_cast<double>(m.constraint16Violations)};
}

using MetricArray = std::array<double, 6>;

MetricArray to_array(const MetricValues& v) {
  return {v.devicesUsed, v.lbVariance,   v.avgUtilization,
          v.avgTurnaround, v.offloadCount, v.constraint16Violations};
}

MetricValues from_array(const MetricArray& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }

}  // namespace

std::size_t expected_row_count(const ExperimentPlan& plan) {
  return plan.workloads.size() * plan.policies.size() * plan.taskCounts.size() *
         plan.deviceCounts.size() * (plan.replications + 1);
}

std::uint64_t instance_seed(const ExperimentPlan& plan, std::size_t workload, std::size_t taskIdx,
                            std::size_t deviceIdx, std::size_t replication) {
  const std::size_t instance =
      ((workload * plan.taskCounts.size() + taskIdx) * plan.deviceCounts.size() + deviceIdx) *
          plan.replications +
      replication;
  return plan.baseSeed + instance;
}

ReportRow summarize(const std::vector<ReportRow>& reps) {
  if (reps.empty()) throw std::invalid_argument("cannot summarize zero replications");
  ReportRow s;
  s.runId = "summary";
  s.policy = reps.front().policy;
  s.workload = reps.front().workload;
  s.taskCount = reps.front().taskCount;
  s.deviceCount = reps.front().deviceCount;

  const double n = static_cast<double>(reps.size());
  MetricArray mean{}, var{};
  for (const ReportRow& r : reps) {
    const MetricArray x = to_array(r.values);
    for (std::size_t i = 0; i < x.size(); ++i) mean[i] += x[i];
    s.wallClockMs += r.wallClockMs;
  }
  for (double& m : mean) m /= n;
  for (const ReportRow& r : reps) {
    const MetricArray x = to_array(r.values);
    for (std::size_t i = 0; i < x.size(); ++i) var[i] += (x[i] - mean[i]) * (x[i] - mean[i]);
  }
  for (double& v : var) v = std::sqrt(v / n);
  s.values = from_array(mean);
  s.stddev = from_array(var);
  s.wallClockMs /= n;
  return s;
}

std::vector<ReportRow> run_sweep(const ExperimentPlan& plan) {
  plan.validate();
  const mcdm::CriteriaWeights weights = plan.criteriaWeights();
  const std::size_t R = plan.replications;

  std::vector<Cell> cells;
  for (std::size_t w = 0; w < plan.workloads.size(); ++w)
    for (std::size_t p = 0; p < plan.policies.size(); ++p)
      for (std::size_t t = 0; t < plan.taskCounts.size(); ++t)
        for (std::size_t d = 0; d < plan.deviceCounts.size(); ++d) cells.push_back({w, p, t, d});

  const std::size_t jobCount = cells.size() * R;
  std::vector<ReportRow> reps(jobCount);
  std::vector<std::exception_ptr> errors(jobCount);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t j = next++; j < jobCount; j = next++) {
      const Cell& c = cells[j / R];
      const std::size_t r = j % R;
      try {
        const std::uint64_t seed = instance_seed(plan, c.workload, c.task, c.device, r);
        sim::WorkloadSpec ws = plan.workloads[c.workload];
        ws.count = plan.taskCounts[c.task];
        sim::TopologySpec ts = plan.topology;
        ts.deviceCount = plan.deviceCounts[c.device];
        const auto tasks = sim::generate_workload(ws, seed);
        const sim::Topology topo = sim::generate_topology(ts, seed + kTopologySalt);
        sim::SimulationOptions opts;
        opts.deploy = plan.deploy;

        const auto t0 = std::chrono::steady_clock::now();
        const sim::SimulationResult res =
            sim::run_simulation(topo, tasks, plan.policies[c.policy], weights, seed, opts);
        const auto t1 = std::chrono::steady_clock::now();

        ReportRow& row = reps[j];
        row.runId = cell_name(plan, c) + "/r" + std::to_string(r);
        row.policy = std::string(sched::to_string(plan.policies[c.policy].kind));
        row.workload = std::string(sim::to_string(ws.mode));
        row.taskCount = ws.count;
        row.deviceCount = ts.deviceCount;
        row.seed = seed;
        row.values = to_values(res.metrics);
        if (plan.recordWallClock) {
          row.wallClockMs = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };

  std::size_t threads = plan.jobs != 0 ? plan.jobs : std::thread::hardware_concurrency();
  threads = std::max<std::size_t>(1, std::min(threads, jobCount));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  for (std::size_t j = 0; j < jobCount; ++j) {
    if (!errors[j]) continue;
    const std::string id = cell_name(plan, cells[j / R]) + "/r" + std::to_string(j % R);
    try {
      std::rethrow_exception(errors[j]);
    } catch (const std::exception& e) {
      throw SweepError(id + ": " + e.what());
    }
  }

  std::vector<ReportRow> rows;
  rows.reserve(expected_row_count(plan));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<ReportRow> cellRows(reps.begin() + static_cast<std::ptrdiff_t>(c * R),
                                    reps.begin() + static_cast<std::ptrdiff_t>((c + 1) * R));
    ReportRow summary = summarize(cellRows);
    for (ReportRow& r : cellRows) rows.push_back(std::move(r));
    rows.push_back(std::move(summary));
  }
  return rows;
}

}  // namespace foglb::experiment
