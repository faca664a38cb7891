// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "foglb/config.hpp"
#include "foglb/fuzzy_mcdm.hpp"
#include "foglb/oracle.hpp"
#include "foglb/report.hpp"
#include "foglb/scheduler.hpp"
#include "foglb/simulation.hpp"
#include "foglb/sweep.hpp"
#include "foglb/workload.hpp"
#include "test_support.hpp"

namespace {

using namespace foglb;
using mcdm::ComparisonMatrix;
using mcdm::CriteriaWeights;
using mcdm::DecisionMatrix;
using mcdm::Direction;
using mcdm::Fuzzification;
using mcdm::Tfn;
using sched::PolicyKind;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double limitSeconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limitSeconds > 0 && secs >= limitSeconds) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(limitSeconds) + " s budget";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<PolicyKind> kAllPolicies{PolicyKind::kAmclbt, PolicyKind::kRoundRobin,
                                           PolicyKind::kWeightedRoundRobin, PolicyKind::kRandom,
                                           PolicyKind::kLeastLoaded};

sched::SchedulerPolicy policy_of(PolicyKind k) {
  sched::SchedulerPolicy p;
  p.kind = k;
  return p;
}

CriteriaWeights default_weights() {
  return experiment::ExperimentPlan::defaults().criteriaWeights();
}

// 1 ------------------------------------------------------------------------

Outcome fahp_unit() {
  const auto w = mcdm::fahp_weights(ComparisonMatrix(experiment::default_comparison_matrix()));
  const double sum = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
  const auto top = std::max_element(w.weights.begin(), w.weights.end()) - w.weights.begin();
  Outcome o{std::abs(sum - 1.0) <= 1e-9 && top == 0, ""};
  o.detail = fmt("sum=%.15f, argmax=C%d, C1=%.6f", sum, static_cast<int>(top) + 1, w.weights[0]);
  return o;
}

// 2 ------------------------------------------------------------------------

std::vector<std::vector<double>> random_reciprocal(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(1, 9);
  std::bernoulli_distribution flip(0.5);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = pick(rng);
      if (flip(rng)) v = 1.0 / v;
      a[i][j] = v;
      a[j][i] = 1.0 / v;
    }
  }
  return a;
}

Outcome mcdm_properties() {
  constexpr int kCases = 1000;
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> factor(0.01, 100.0), bump(0.0, 3.0);
  int scaleFail = 0, domFail = 0, topsisPermFail = 0, fahpPermFail = 0;
  double worstScale = 0.0;

  for (int trial = 0; trial < kCases; ++trial) {
    const std::size_t rows = 2 + trial % 7, cols = 1 + trial % 6;

    // (a) column-scale invariance
    DecisionMatrix dm = test::random_decision_matrix(rng, rows, cols);
    const CriteriaWeights w = test::random_weights(rng, cols);
    const auto base = mcdm::ftopsis_rank(dm, w);
    const std::size_t col = static_cast<std::size_t>(trial) % cols;
    const double k = factor(rng);
    for (std::size_t r = 0; r < rows; ++r) {
      const Tfn t = dm.at(r, col);
      dm.at(r, col) = Tfn{t.l * k, t.m * k, t.u * k};
    }
    const auto scaled = mcdm::ftopsis_rank(dm, w);
    double gap = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      gap = std::max(gap, std::abs(base.closeness[r] - scaled.closeness[r]));
    }
    worstScale = std::max(worstScale, gap);
    if (gap > 1e-9) ++scaleFail;

    // (b) dominance: row 0 is row 1 improved on every criterion
    DecisionMatrix dd = test::random_decision_matrix(rng, rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const Tfn b = dd.at(1, c);
      const double d = bump(rng);
      if (w.directions[c] == Direction::kBenefit) {
        dd.at(0, c) = Tfn{b.l + d, b.m + d, b.u + d};
      } else {
        const double s = 1.0 / (1.0 + d);
        dd.at(0, c) = Tfn{b.l * s, b.m * s, b.u * s};
      }
    }
    const auto dr = mcdm::ftopsis_rank(dd, w);
    if (dr.closeness[0] < dr.closeness[1]) ++domFail;

    // (c) permutation equivariance, FTOPSIS
    std::vector<std::size_t> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), std::size_t{0});
    std::iota(cp.begin(), cp.end(), std::size_t{0});
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    DecisionMatrix permuted(rows, cols);
    CriteriaWeights pw{std::vector<double>(cols), std::vector<Direction>(cols)};
    for (std::size_t c = 0; c < cols; ++c) {
      pw.weights[c] = w.weights[cp[c]];
      pw.directions[c] = w.directions[cp[c]];
      for (std::size_t r = 0; r < rows; ++r) permuted.at(r, c) = dd.at(rp[r], cp[c]);
    }
    const auto moved = mcdm::ftopsis_rank(permuted, pw);
    for (std::size_t r = 0; r < rows; ++r) {
      if (std::abs(moved.closeness[r] - dr.closeness[rp[r]]) > 1e-9) {
        ++topsisPermFail;
        break;
      }
    }

    // (c) permutation equivariance, FAHP
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    const auto a = random_reciprocal(rng, n);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::vector<double>> b(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) b[i][j] = a[p[i]][p[j]];
    }
    const auto wa = mcdm::fahp_weights(ComparisonMatrix(a));
    const auto wb = mcdm::fahp_weights(ComparisonMatrix(b));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(wb.weights[i] - wa.weights[p[i]]) > 1e-9) {
        ++fahpPermFail;
        break;
      }
    }
  }
  Outcome o{scaleFail + domFail + topsisPermFail + fahpPermFail == 0, ""};
  o.detail = fmt("%d cases each; failures scale=%d (worst %.2e) dominance=%d ftopsis-perm=%d "
                 "fahp-perm=%d",
                 kCases, scaleFail, worstScale, domFail, topsisPermFail, fahpPermFail);
  return o;
}

// 3 ------------------------------------------------------------------------

sim::Topology one_node(const std::vector<cost::DeviceSpec>& devs) {
  sim::Topology t;
  sim::FogNode n;
  n.devices = devs;
  n.serverId = 0;
  t.nodes.push_back(n);
  t.cloud = sim::TopologySpec::default_cloud();
  return t;
}

// Every task recorded exactly once, fog placements within the deadline and
// no device ever over capacity.
bool compliant(const std::vector<cost::TaskSpec>& tasks, const sim::Topology& topo,
               const sched::SchedulerPolicy& policy, const CriteriaWeights& weights,
               std::uint64_t seed, sim::SimulationResult* out) {
  bool ok = true;
  sim::SimulationOptions opts;
  opts.observer = [&](sim::EventKind, double, std::span<const sched::DeviceState> devs) {
    for (const auto& d : devs) {
      for (double r : d.remaining()) ok = ok && r >= -1e-9;
    }
  };
  *out = sim::run_simulation(topo, tasks, policy, weights, seed, opts);
  std::vector<int> seen(tasks.size(), 0);
  for (const auto& rec : out->records) {
    ++seen[static_cast<std::size_t>(rec.taskId)];
    if (!rec.offloaded && rec.responseTime > tasks[static_cast<std::size_t>(rec.taskId)].deadline + 1e-9) {
      ok = false;
    }
  }
  return ok && std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
}

Outcome oracle_equivalence() {
  constexpr int kInstances = 50;
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CriteriaWeights weights = default_weights();
  int better = 0, incomparable = 0, mismatched = 0, nonCompliant = 0, constrainedUsed = 0;
  double ratioSum = 0.0, worstRatio = 1.0;

  for (int inst = 0; inst < kInstances; ++inst) {
    const std::size_t nDev = 1 + static_cast<std::size_t>(inst % 5);
    const std::size_t nTask = 1 + static_cast<std::size_t>(inst % 8);
    std::vector<cost::DeviceSpec> devs;
    for (std::size_t j = 0; j < nDev; ++j) {
      devs.push_back(test::make_device(static_cast<int>(j), 500 + 1500 * u(rng), 20 + 80 * u(rng),
                                       100000.0, 1 + 2 * u(rng)));
    }
    std::vector<cost::TaskSpec> tasks;
    for (std::size_t i = 0; i < nTask; ++i) {
      tasks.push_back(test::make_task(static_cast<int>(i), 1 + 49 * u(rng), 100 + 1900 * u(rng),
                                      50 + 150 * u(rng), 1000.0));
    }
    const sim::Topology topo = one_node(devs);

    for (PolicyKind k : kAllPolicies) {
      sim::SimulationResult res;
      if (!compliant(tasks, topo, policy_of(k), weights, 100 + inst, &res)) ++nonCompliant;
    }

    sim::SimulationResult amclbt;
    compliant(tasks, topo, policy_of(PolicyKind::kAmclbt), weights, 100 + inst, &amclbt);
    std::vector<std::size_t> mapping(nTask);
    double recordCost = 0.0;
    bool anyCloud = false;
    for (const auto& rec : amclbt.records) {
      if (rec.offloaded) anyCloud = true;
      mapping[static_cast<std::size_t>(rec.taskId)] = static_cast<std::size_t>(std::max(rec.deviceId, 0));
      recordCost += rec.execCost;
    }
    const auto replay = sched::replay_assignment(tasks, devs, mapping, cost::DeployModel{});
    if (anyCloud || !replay.feasible) {
      ++incomparable;
      continue;
    }
    if (std::abs(replay.totalCost - recordCost) > 1e-9) ++mismatched;

    const bool usage = sched::satisfies_usage(mapping, nDev, sched::UsageRule::kWhenEnoughTasks);
    constrainedUsed += usage ? 1 : 0;
    const auto best = sched::brute_force_assign(
        tasks, devs, cost::DeployModel{},
        usage ? sched::UsageRule::kWhenEnoughTasks : sched::UsageRule::kWaived);
    if (!best.feasible || replay.totalCost < best.totalCost - 1e-12) {
      ++better;
      continue;
    }
    const double ratio = best.totalCost > 0 ? replay.totalCost / best.totalCost : 1.0;
    ratioSum += ratio;
    worstRatio = std::max(worstRatio, ratio);
  }
  const int compared = kInstances - incomparable;
  Outcome o{better == 0 && incomparable == 0 && mismatched == 0 && nonCompliant == 0, ""};
  o.detail = fmt("%d instances; AMCLBT below optimum=%d, not comparable=%d, cost mismatches=%d, "
                 "non-compliant policy runs=%d/%d; cost/optimum mean %.4f worst %.4f "
                 "(%d against the usage-constrained optimum)",
                 kInstances, better, incomparable, mismatched, nonCompliant,
                 kInstances * static_cast<int>(kAllPolicies.size()),
                 compared > 0 ? ratioSum / compared : 0.0, worstRatio, constrainedUsed);
  return o;
}

// 4-6 ----------------------------------------------------------------------

using CellKey = std::tuple<std::string, std::string, std::size_t, std::size_t>;

struct DeskGrid {
  experiment::ExperimentPlan plan;
  std::vector<experiment::ReportRow> rows;
  std::map<CellKey, const experiment::ReportRow*> summary;

  const experiment::ReportRow& at(const std::string& wl, const std::string& pol, std::size_t t,
                                  std::size_t d) const {
    return *summary.at({wl, pol, t, d});
  }
};

const DeskGrid& desk_grid() {
  static const DeskGrid grid = [] {
    DeskGrid g;
    g.plan = experiment::ExperimentPlan::defaults();
    g.plan.replications = 10;
    g.rows = experiment::run_sweep(g.plan);
    for (const auto& r : g.rows) {
      if (r.isSummary()) g.summary[{r.workload, r.policy, r.taskCount, r.deviceCount}] = &r;
    }
    return g;
  }();
  return grid;
}

const std::vector<std::string> kWorkloads{"heterogeneous", "homogeneous"};

Outcome load_balance_trend() {
  const DeskGrid& g = desk_grid();
  int cells = 0, wins = 0, vsRandom = 0, vsRr = 0;
  std::ostringstream lost;
  for (const auto& wl : kWorkloads) {
    for (std::size_t t : g.plan.taskCounts) {
      for (std::size_t d : g.plan.deviceCounts) {
        ++cells;
        const double a = g.at(wl, "AMCLBT", t, d).values.lbVariance;
        const double rnd = g.at(wl, "RANDOM", t, d).values.lbVariance;
        const double rr = g.at(wl, "ROUND_ROBIN", t, d).values.lbVariance;
        vsRandom += a < rnd;
        vsRr += a < rr;
        if (a < rnd && a < rr) {
          ++wins;
        } else {
          lost << ' ' << wl.substr(0, 3) << "/t" << t << "/d" << d;
        }
      }
    }
  }
  const double frac = static_cast<double>(wins) / cells;
  Outcome o{frac >= 0.8, ""};
  o.detail = fmt("AMCLBT below both in %d/%d cells (%.0f%%, need 80%%); below RANDOM %d, below "
                 "ROUND_ROBIN %d; not below both:%s",
                 wins, cells, 100 * frac, vsRandom, vsRr, lost.str().c_str());
  return o;
}

Outcome utilization_trend() {
  const DeskGrid& g = desk_grid();
  const std::vector<std::string> baselines{"ROUND_ROBIN", "WEIGHTED_ROUND_ROBIN", "RANDOM",
                                           "LEAST_LOADED"};
  bool pass = true;
  std::ostringstream detail;
  int cells = 0;
  for (const auto& b : baselines) {
    int atLeast = 0;
    cells = 0;
    for (std::size_t t : g.plan.taskCounts) {
      for (std::size_t d : g.plan.deviceCounts) {
        ++cells;
        atLeast += g.at("heterogeneous", "AMCLBT", t, d).values.avgUtilization >=
                   g.at("heterogeneous", b, t, d).values.avgUtilization;
      }
    }
    const double frac = static_cast<double>(atLeast) / cells;
    pass = pass && frac >= 0.7;
    detail << (detail.tellp() > 0 ? ", " : "") << b << ' ' << atLeast << '/' << cells;
  }
  Outcome o{pass, ""};
  o.detail = "heterogeneous cells with AMCLBT >= baseline (need 70% each): " + detail.str();
  return o;
}

Outcome turnaround_trend() {
  const DeskGrid& g = desk_grid();
  int checks = 0, held = 0;
  std::ostringstream broke;
  for (const auto& wl : kWorkloads) {
    for (std::size_t t : g.plan.taskCounts) {
      for (std::size_t i = 0; i + 1 < g.plan.deviceCounts.size(); ++i) {
        const auto& prev = g.at(wl, "AMCLBT", t, g.plan.deviceCounts[i]);
        const auto& next = g.at(wl, "AMCLBT", t, g.plan.deviceCounts[i + 1]);
        ++checks;
        if (next.values.avgTurnaround <= prev.values.avgTurnaround + prev.stddev->avgTurnaround) {
          ++held;
        } else {
          broke << ' ' << wl.substr(0, 3) << "/t" << t << "/d" << g.plan.deviceCounts[i] << "->"
                << g.plan.deviceCounts[i + 1];
        }
      }
    }
  }
  Outcome o{held == checks, ""};
  o.detail = fmt("%d/%d steps non-increasing within one std;", held, checks) +
             (broke.str().empty() ? std::string(" none broken") : broke.str());
  return o;
}

// 7 ------------------------------------------------------------------------

Outcome determinism() {
  experiment::ExperimentPlan plan = experiment::ExperimentPlan::defaults();
  plan.replications = 10;
  plan.jobs = 1;
  const std::string first = experiment::to_csv(experiment::run_sweep(plan));
  plan.jobs = 0;
  const std::string second = experiment::to_csv(experiment::run_sweep(plan));
  const std::string reference = experiment::to_csv(desk_grid().rows);
  Outcome o{first == second && first == reference, ""};
  o.detail = fmt("desk grid CSV, %zu bytes; serial vs parallel %s, repeat %s", first.size(),
                 first == second ? "identical" : "DIFFERENT",
                 first == reference ? "identical" : "DIFFERENT");
  return o;
}

// 8 ------------------------------------------------------------------------

Outcome conservation() {
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<std::size_t> devCount(5, 25), nodeCount(1, 3);
  std::uniform_real_distribution<double> rate(20.0, 200.0);
  bool ok = true;
  double worstCap = 0.0, worstLoad = 0.0;
  std::ostringstream events;
  for (PolicyKind k : kAllPolicies) {
    sim::TopologySpec ts;
    ts.deviceCount = devCount(rng);
    ts.nodeCount = std::min(nodeCount(rng), ts.deviceCount);
    sim::WorkloadSpec ws;
    ws.count = 10000;
    ws.arrivalRate = rate(rng);
    const std::uint64_t seed = rng();
    const sim::Topology topo = sim::generate_topology(ts, seed);
    const auto tasks = sim::generate_workload(ws, seed);

    std::size_t n = 0;
    sim::SimulationOptions opts;
    opts.observer = [&](sim::EventKind, double, std::span<const sched::DeviceState> devs) {
      ++n;
      for (const auto& d : devs) {
        for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
          double held = d.remaining()[r];
          for (const auto& a : d.live()) held += a.demand[r];
          worstCap = std::max(worstCap, std::abs(held - d.spec().capacity[r]));
          if (d.remaining()[r] < -1e-9) ok = false;
        }
        worstLoad = std::max(worstLoad, std::abs(d.loadFactor() - d.recomputedLoadFactor()));
      }
    };
    sim::run_simulation(topo, tasks, policy_of(k), default_weights(), seed, opts);
    if (n < 10000) ok = false;
    events << (events.tellp() > 0 ? " " : "") << sched::to_string(k) << '=' << n;
  }
  ok = ok && worstCap <= 1e-9 && worstLoad <= 1e-9;
  Outcome o{ok, ""};
  o.detail = "events " + events.str() +
             fmt("; worst capacity drift %.2e, worst loadFactor drift %.2e", worstCap, worstLoad);
  return o;
}

}  // namespace

int main() {
  run(1, "FAHP weights", 1.0, fahp_unit);
  run(2, "MCDM properties", 30.0, mcdm_properties);
  run(3, "oracle equivalence and constraint compliance", 120.0, oracle_equivalence);
  run(4, "load-balance trend", 300.0, load_balance_trend);
  run(5, "utilization trend", 0.0, utilization_trend);
  run(6, "turnaround trend", 0.0, turnaround_trend);
  run(7, "determinism", 0.0, determinism);
  run(8, "conservation", 0.0, conservation);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
