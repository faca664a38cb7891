// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "foglb/config.hpp"
#include "foglb/report.hpp"
#include "foglb/sweep.hpp"
#include "json.hpp"

namespace {

using namespace foglb::experiment;
namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("foglb_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string expect_config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

ExperimentPlan tiny_plan() {
  ExperimentPlan plan = ExperimentPlan::defaults();
  plan.taskCounts = {40};
  plan.deviceCounts = {5};
  plan.replications = 3;
  plan.policies.resize(1);
  plan.workloads.resize(1);
  return plan;
}

TEST(Config, MinimalConfigGetsDefaults) {
  const ExperimentPlan p = parse_config_text(R"({"taskCounts": [100, 200], "deviceCounts": [5]})");
  EXPECT_EQ(p.taskCounts, (std::vector<std::size_t>{100, 200}));
  EXPECT_EQ(p.deviceCounts, (std::vector<std::size_t>{5}));
  EXPECT_EQ(p.replications, 10u);
  EXPECT_EQ(p.baseSeed, 20240601u);
  EXPECT_EQ(p.comparisonMatrix, default_comparison_matrix());
  ASSERT_EQ(p.policies.size(), 5u);
  EXPECT_EQ(p.policies[0].kind, foglb::sched::PolicyKind::kAmclbt);
  EXPECT_EQ(p.policies[0].wq, 0.5);
  EXPECT_EQ(p.policies[0].we, 0.5);
  ASSERT_EQ(p.workloads.size(), 2u);
  EXPECT_EQ(p.workloads[0].arrivalRate, 0.0);
  EXPECT_EQ(p.format, ReportFormat::kCsv);
  EXPECT_EQ(p.topology.nodeCount, 1u);
}

TEST(Config, EmptyObjectIsTheDeskGrid) {
  const ExperimentPlan p = parse_config_text("{}");
  EXPECT_EQ(p.taskCounts, kDeskTaskCounts);
  EXPECT_EQ(p.deviceCounts, kDeskDeviceCounts);
  EXPECT_EQ(parse_config_text(R"({"fullGrid": true})").taskCounts, kFullTaskCounts);
}

TEST(Config, RejectsUnbalancedWeightPair) {
  const std::string msg = expect_config_error(R"({"amclbt": {"wq": 0.7, "we": 0.2}})");
  EXPECT_NE(msg.find("wq + we must equal 1"), std::string::npos) << msg;
  const std::string inPolicy =
      expect_config_error(R"({"policies": [{"name": "AMCLBT", "wq": 0.7, "we": 0.2}]})");
  EXPECT_NE(inPolicy.find("wq + we must equal 1"), std::string::npos) << inPolicy;
}

TEST(Config, MatrixOverrideIsEchoed) {
  const std::string text = R"({"comparisonMatrix": [
      [1, 3, 2, 2, 1, 3],
      ["1/3", 1, 3, 1, 3, 2],
      [0.5, "1/3", 1, 2, 3, 2],
      [0.5, 1, 0.5, 1, 2, 3],
      [1, "1/3", "1/3", 0.5, 1, 2],
      ["1/3", 0.5, 0.5, "1/3", 0.5, 1]]})";
  const ExperimentPlan p = parse_config_text(text);
  EXPECT_EQ(p.comparisonMatrix, default_comparison_matrix());
  const auto dumped = nlohmann::json::parse(dump_plan(p));
  EXPECT_EQ(dumped["comparisonMatrix"].get<std::vector<std::vector<double>>>(),
            default_comparison_matrix());
}

TEST(Config, DumpRoundTrips) {
  ExperimentPlan p = parse_config_text(R"({
    "taskCounts": [10], "deviceCounts": [4, 6], "replications": 2, "baseSeed": 9,
    "policies": ["RANDOM", {"name": "AMCLBT", "wq": 0.25, "we": 0.75, "normalizeSpeed": true},
                 {"name": "WEIGHTED_ROUND_ROBIN", "weights": [2, 1]}],
    "workloads": [{"mode": "homogeneous", "arrivalRate": 3, "deadline": [2, 4]}],
    "topology": {"nodes": 2, "mips": [100, 200], "capacity": {"memory": [512, 1024]},
                 "availableTime": 50, "cloud": {"mips": 9000}},
    "deploy": {"wanPenalty": 0.25}, "output": {"dir": "x", "format": "json"},
    "fuzzification": "crisp", "jobs": 2, "recordWallClock": true})");
  const ExperimentPlan q = parse_config_text(dump_plan(p));
  EXPECT_EQ(dump_plan(p), dump_plan(q));
  EXPECT_EQ(q.policies[1].we, 0.75);
  EXPECT_TRUE(q.policies[1].normalizeSpeed);
  EXPECT_EQ(q.policies[2].wrrWeights, (std::vector<double>{2, 1}));
  EXPECT_EQ(q.topology.availableTime, 50.0);
  EXPECT_EQ(q.deploy.wanPenalty, 0.25);
  EXPECT_EQ(q.format, ReportFormat::kJson);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_NE(expect_config_error(R"({"replications": 0})").find("replications"), std::string::npos);
  EXPECT_NE(expect_config_error(R"({"policies": ["FASTEST"]})").find("policies[0]"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"taskCount": [1]})").find("taskCount"), std::string::npos);
  EXPECT_NE(expect_config_error(R"({"topology": {"mips": [5, 1]}})").find("topology.mips"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"comparisonMatrix": [[1, 2], [0.4, 1]]})").find("comparisonMatrix"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"taskCounts": []})").find("taskCounts"), std::string::npos);
  expect_config_error("{not json");
  EXPECT_THROW(parse_config("/nonexistent/plan.json"), ConfigError);
}

TEST(Config, MatrixText) {
  EXPECT_EQ(parse_matrix_text(R"({"matrix": [[1, "1/4"], [4, 1]]})"),
            (std::vector<std::vector<double>>{{1, 0.25}, {4, 1}}));
  EXPECT_THROW(parse_matrix_text(R"([[1, "x"], [1, 1]])"), ConfigError);
}

TEST(Sweep, RowCountAndOrder) {
  const ExperimentPlan plan = tiny_plan();
  const auto rows = run_sweep(plan);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(expected_row_count(plan), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i].seed, plan.baseSeed + i);
    EXPECT_FALSE(rows[i].isSummary());
  }
  EXPECT_TRUE(rows[3].isSummary());
  EXPECT_EQ(rows[3].runId, "summary");
  const double mean =
      (rows[0].values.avgTurnaround + rows[1].values.avgTurnaround + rows[2].values.avgTurnaround) / 3;
  EXPECT_NEAR(rows[3].values.avgTurnaround, mean, 1e-12);
  ASSERT_TRUE(rows[3].stddev.has_value());
  EXPECT_GE(rows[3].stddev->avgTurnaround, 0.0);
}

TEST(Sweep, FullCountFormulaAndPairedSeeds) {
  ExperimentPlan plan = ExperimentPlan::defaults();
  plan.taskCounts = {20, 30};
  plan.deviceCounts = {5, 6};
  plan.replications = 2;
  const auto rows = run_sweep(plan);
  EXPECT_EQ(rows.size(), expected_row_count(plan));
  EXPECT_EQ(rows.size(), 2u * 5 * 2 * 2 * 3);
  // Every policy sees the same instance seeds in a workload.
  std::map<std::string, std::vector<std::uint64_t>> seeds;
  for (const auto& r : rows) {
    if (r.seed) seeds[r.workload + r.policy].push_back(*r.seed);
  }
  EXPECT_EQ(seeds["heterogeneousAMCLBT"], seeds["heterogeneousRANDOM"]);
  EXPECT_NE(seeds["heterogeneousAMCLBT"], seeds["homogeneousAMCLBT"]);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  ExperimentPlan plan = ExperimentPlan::defaults();
  plan.taskCounts = {50};
  plan.deviceCounts = {5, 10};
  plan.replications = 3;
  plan.jobs = 1;
  const std::string serial = to_csv(run_sweep(plan));
  plan.jobs = 8;
  EXPECT_EQ(serial, to_csv(run_sweep(plan)));
  EXPECT_EQ(serial, to_csv(run_sweep(plan)));
}

TEST(Sweep, InvalidPlanIsRejectedBeforeRunning) {
  ExperimentPlan plan = tiny_plan();
  plan.topology.cloud.mips = 0;
  try {
    run_sweep(plan);
    FAIL() << "expected an error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("mips"), std::string::npos) << e.what();
  }
  plan = tiny_plan();
  plan.topology.nodeCount = 6;
  EXPECT_THROW(run_sweep(plan), ConfigError);
}

TEST(Report, OneRowIsTwoLines) {
  ReportRow r;
  r.runId = "a/r0";
  r.policy = "AMCLBT";
  r.workload = "heterogeneous";
  r.taskCount = 10;
  r.deviceCount = 5;
  r.seed = 7;
  r.values.lbVariance = 1.0 / 3.0;
  const std::string csv = to_csv({r});
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "runId,policy,taskCount,deviceCount,seed,devicesUsed,lbVariance,avgUtilization,"
            "avgTurnaround,offloadCount,constraint16Violations,wallClockMs,workload,devicesUsedStd,"
            "lbVarianceStd,avgUtilizationStd,avgTurnaroundStd,offloadCountStd,"
            "constraint16ViolationsStd");
  EXPECT_NE(csv.find("a/r0,AMCLBT,10,5,7,0.000000,0.333333,"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  const auto rows = run_sweep(tiny_plan());
  EXPECT_EQ(rows_from_json(rows_to_json(rows)), rows);
  EXPECT_THROW(rows_from_json("[{}]"), ReportError);
}

TEST(Report, EmitsSeriesWithOnePointPerAxisValue) {
  ExperimentPlan plan = tiny_plan();
  plan.taskCounts = {20, 40, 60};
  plan.deviceCounts = {5, 6};
  plan.replications = 2;
  const auto rows = run_sweep(plan);
  const fs::path dir = scratch("series");
  const auto files = emit_report(rows, ReportFormat::kCsv, dir);
  EXPECT_EQ(files.size(), 1u + 8u);
  const std::string series = read_file(dir / "series_lbVariance_vs_taskCount.csv");
  EXPECT_EQ(std::count(series.begin(), series.end(), '\n'), 1 + 3);
  EXPECT_EQ(series.substr(0, series.find('\n')), "policy,workload,taskCount,mean");
  EXPECT_EQ(plot_series(rows, "avgTurnaround", "deviceCount").size(), 2u);
  EXPECT_EQ(read_file(dir / "report.csv"), to_csv(rows));
}

TEST(Report, Errors) {
  EXPECT_THROW(emit_report({}, ReportFormat::kCsv, scratch("empty")), ReportError);
  const fs::path file = scratch("blocked") / "file";
  write_file(file, "x");
  ReportRow r;
  r.policy = "RANDOM";
  EXPECT_THROW(emit_report({r}, ReportFormat::kJson, file / "sub"), ReportError);
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(FOGLB_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, RunWritesReportAndPlan) {
  const fs::path dir = scratch("cli");
  write_file(dir / "plan.json", R"({"taskCounts": [30], "deviceCounts": [5], "replications": 2})");
  ASSERT_EQ(run_cli("run --config " + (dir / "plan.json").string() + " --out " +
                    (dir / "a").string() + " --policy AMCLBT --policy RANDOM --seed 5"),
            0);
  ASSERT_EQ(run_cli("run --config " + (dir / "plan.json").string() + " --out " +
                    (dir / "b").string() + " --policy AMCLBT --policy RANDOM --seed 5"),
            0);
  EXPECT_EQ(read_file(dir / "a" / "report.csv"), read_file(dir / "b" / "report.csv"));
  const ExperimentPlan echoed = parse_config(dir / "a" / "plan.json");
  EXPECT_EQ(echoed.baseSeed, 5u);
  EXPECT_EQ(echoed.policies.size(), 2u);
  ASSERT_EQ(run_cli("run --config " + (dir / "plan.json").string() + " --out " +
                    (dir / "c").string() + " --format json"),
            0);
  EXPECT_TRUE(fs::exists(dir / "c" / "report.json"));
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli_codes");
  write_file(dir / "bad.json", R"({"amclbt": {"wq": 0.7, "we": 0.2}})");
  write_file(dir / "ok.json", R"({"taskCounts": [5], "deviceCounts": [5], "replications": 1})");
  write_file(dir / "blocker", "x");
  EXPECT_EQ(run_cli("run --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "ok.json").string() + " --policy NOPE"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "ok.json").string() + " --out " +
                    (dir / "blocker" / "out").string()),
            3);
}

TEST(Cli, WeightsAndRank) {
  const fs::path dir = scratch("cli_mcdm");
  write_file(dir / "m.json", R"([[1, 9], ["1/9", 1]])");
  EXPECT_EQ(run_cli("weights --matrix " + (dir / "m.json").string() + " --crisp"), 0);
  write_file(dir / "devices.json", R"({"alternatives": [[4, [1, 2, 3]], [3, [2, 2, 2]], [0, 5]]})");
  write_file(dir / "w.json", R"({"weights": [0.6, 0.4], "directions": ["benefit", "cost"]})");
  EXPECT_EQ(run_cli("rank --devices " + (dir / "devices.json").string() + " --weights " +
                    (dir / "w.json").string()),
            0);
  write_file(dir / "w_bad.json", R"({"weights": [0.6, 0.6]})");
  EXPECT_EQ(run_cli("rank --devices " + (dir / "devices.json").string() + " --weights " +
                    (dir / "w_bad.json").string()),
            2);
}

}  // namespace
