// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors
//
// foglb: fog load-balancing experiments.
//
//   foglb run --config plan.json [--out dir] [--format csv|json] [--policy NAME...]
//             [--seed N] [--full-grid] [--jobs N] [--wall-clock]
//   foglb weights --matrix matrix.json [--crisp]
//   foglb rank --devices devices.json --weights weights.json
//
// Exit status: 0 success, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "foglb/config.hpp"
#include "foglb/fuzzy_mcdm.hpp"
#include "foglb/report.hpp"
#include "foglb/sweep.hpp"
#include "json.hpp"

namespace {

using foglb::experiment::ConfigError;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json load_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": not valid JSON: " + e.what());
  }
}

struct RunArgs {
  std::string config;
  std::string out;
  std::string format;
  std::vector<std::string> policies;
  std::int64_t seed = -1;
  bool fullGrid = false;
  std::size_t jobs = 0;
  bool wallClock = false;
};

int cmd_run(const RunArgs& a) {
  foglb::experiment::ExperimentPlan plan = foglb::experiment::parse_config(a.config);
  if (!a.out.empty()) plan.outputDir = a.out;
  if (!a.format.empty()) {
    try {
      plan.format = foglb::experiment::parse_report_format(a.format);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--format: ") + e.what());
    }
  }
  if (!a.policies.empty()) {
    std::vector<foglb::sched::SchedulerPolicy> configured = plan.policies;
    plan.policies.clear();
    for (const std::string& name : a.policies) {
      foglb::sched::SchedulerPolicy p;
      try {
        p.kind = foglb::sched::parse_policy_kind(name);
      } catch (const std::invalid_argument&) {
        throw ConfigError("--policy: unknown policy name \"" + name + "\"");
      }
      for (const auto& c : configured) {
        if (c.kind == p.kind) p = c;
      }
      plan.policies.push_back(p);
    }
  }
  if (a.seed >= 0) plan.baseSeed = static_cast<std::uint64_t>(a.seed);
  if (a.fullGrid) plan.useFullGrid();
  if (a.jobs != 0) plan.jobs = a.jobs;
  if (a.wallClock) plan.recordWallClock = true;
  plan.validate();

  const double cr = foglb::mcdm::consistency_ratio(foglb::mcdm::ComparisonMatrix(plan.comparisonMatrix));
  if (cr > 0.1) {
    std::fprintf(stderr, "warning: comparison matrix consistency ratio %.4f exceeds 0.1\n", cr);
  }

  const std::vector<foglb::experiment::ReportRow> rows = foglb::experiment::run_sweep(plan);
  const std::filesystem::path dir(plan.outputDir);
  auto files = foglb::experiment::emit_report(rows, plan.format, dir);
  {
    std::ofstream dump(dir / "plan.json", std::ios::binary);
    dump << foglb::experiment::dump_plan(plan) << '\n';
    if (!dump) throw std::runtime_error("cannot write plan.json");
  }
  std::printf("%zu rows, %zu cells -> %s\n", rows.size(),
              rows.size() / (plan.replications + 1), files.front().string().c_str());
  return 0;
}

int cmd_weights(const std::string& matrixPath, bool crisp) {
  const auto entries = foglb::experiment::parse_matrix_text(slurp(matrixPath));
  foglb::mcdm::ComparisonMatrix matrix(entries);
  const auto w = foglb::mcdm::fahp_weights(
      matrix, crisp ? foglb::mcdm::Fuzzification::kCrisp : foglb::mcdm::Fuzzification::kSaaty);
  for (std::size_t i = 0; i < w.size(); ++i) std::printf("C%zu %.6f\n", i + 1, w.weights[i]);
  const double cr = foglb::mcdm::consistency_ratio(matrix);
  std::printf("CR %.6f\n", cr);
  if (cr > 0.1) std::fprintf(stderr, "warning: consistency ratio exceeds 0.1\n");
  return 0;
}

foglb::mcdm::Tfn read_cell(const json& v, const std::string& where) {
  try {
    if (v.is_number()) return foglb::mcdm::Tfn::crisp(v.get<double>());
    if (v.is_array() && v.size() == 3) {
      return foglb::mcdm::Tfn::make(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a number or [l, m, u], got " + v.dump());
}

int cmd_rank(const std::string& devicesPath, const std::string& weightsPath) {
  json dev = load_json(devicesPath);
  if (dev.is_object() && dev.contains("alternatives")) dev = dev["alternatives"];
  if (!dev.is_array() || dev.empty() || !dev[0].is_array()) {
    throw ConfigError(devicesPath + ": expected a list of alternatives, each a list of ratings");
  }
  const std::size_t rows = dev.size(), cols = dev[0].size();
  std::vector<foglb::mcdm::Tfn> cells;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!dev[i].is_array() || dev[i].size() != cols) {
      throw ConfigError(devicesPath + ": alternative " + std::to_string(i) + " needs " +
                        std::to_string(cols) + " ratings");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      cells.push_back(read_cell(dev[i][j], devicesPath + "[" + std::to_string(i) + "][" +
                                               std::to_string(j) + "]"));
    }
  }

  const json wj = load_json(weightsPath);
  foglb::mcdm::CriteriaWeights w;
  const json& list = wj.is_object() ? wj.value("weights", json()) : wj;
  if (!list.is_array()) throw ConfigError(weightsPath + ": expected a weights list");
  for (const json& x : list) {
    if (!x.is_number()) throw ConfigError(weightsPath + ": weight " + x.dump() + " is not a number");
    w.weights.push_back(x.get<double>());
  }
  w.directions.assign(w.weights.size(), foglb::mcdm::Direction::kBenefit);
  if (wj.is_object() && wj.contains("directions")) {
    const json& d = wj["directions"];
    if (!d.is_array() || d.size() != w.weights.size()) {
      throw ConfigError(weightsPath + ": directions must match the weights");
    }
    for (std::size_t j = 0; j < d.size(); ++j) {
      const std::string s = d[j].is_string() ? d[j].get<std::string>() : "";
      if (s == "cost") {
        w.directions[j] = foglb::mcdm::Direction::kCost;
      } else if (s != "benefit") {
        throw ConfigError(weightsPath + ": direction " + d[j].dump() + " is not benefit or cost");
      }
    }
  }
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(weightsPath + ": " + e.what());
  }

  const auto result = foglb::mcdm::ftopsis_rank(foglb::mcdm::DecisionMatrix(rows, cols, cells), w);
  std::printf("rank alternative closeness\n");
  for (std::size_t k = 0; k < result.order.size(); ++k) {
    std::printf("%zu %zu %.6f\n", k + 1, result.order[k], result.closeness[result.order[k]]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fog device load-balancing experiments"};
  app.require_subcommand(1);

  RunArgs run;
  auto* runCmd = app.add_subcommand("run", "Run an experiment sweep and write the report");
  runCmd->add_option("--config", run.config, "JSON experiment plan")->required();
  runCmd->add_option("--out", run.out, "Output directory");
  runCmd->add_option("--format", run.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  runCmd->add_option("--policy", run.policies, "Policies to run (repeatable)");
  runCmd->add_option("--seed", run.seed, "Base seed")->check(CLI::NonNegativeNumber);
  runCmd->add_flag("--full-grid", run.fullGrid, "Use the 1000-5000 task, 5-25 device grid");
  runCmd->add_option("--jobs", run.jobs, "Worker threads (0 = all cores)");
  runCmd->add_flag("--wall-clock", run.wallClock, "Record per-run wall-clock time");

  std::string matrixPath;
  bool crisp = false;
  auto* weightsCmd = app.add_subcommand("weights", "Print FAHP weights and consistency ratio");
  weightsCmd->add_option("--matrix", matrixPath, "Pairwise comparison matrix (JSON)")->required();
  weightsCmd->add_flag("--crisp", crisp, "Use crisp judgments instead of Saaty fuzzification");

  std::string devicesPath, weightsPath;
  auto* rankCmd = app.add_subcommand("rank", "Rank alternatives with fuzzy TOPSIS");
  rankCmd->add_option("--devices", devicesPath, "Decision matrix (JSON)")->required();
  rankCmd->add_option("--weights", weightsPath, "Criteria weights (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (runCmd->parsed()) return cmd_run(run);
    if (weightsCmd->parsed()) return cmd_weights(matrixPath, crisp);
    return cmd_rank(devicesPath, weightsPath);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}
