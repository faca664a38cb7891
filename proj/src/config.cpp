// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace foglb::experiment {

using nlohmann::json;

namespace {

constexpr const char* kResourceKeys[cost::kResourceCount] = {"processing", "cache", "memory",
                                                             "bandwidth", "storage"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

std::string show(const json& v) { return v.dump(); }

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path.empty() ? "config" : path, "expected an object, got " + show(obj));
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      fail(join(path, key), "unknown key");
    }
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number, got " + show(v));
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number, got " + show(v));
  return d;
}

double as_positive(const json& v, const std::string& path) {
  const double d = as_number(v, path);
  if (!(d > 0.0)) fail(path, "expected a positive number, got " + show(v));
  return d;
}

double as_nonnegative(const json& v, const std::string& path) {
  const double d = as_number(v, path);
  if (!(d >= 0.0)) fail(path, "expected a non-negative number, got " + show(v));
  return d;
}

std::uint64_t as_unsigned(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0 &&
                                 !v.is_number_unsigned())) {
    fail(path, "expected a non-negative integer, got " + show(v));
  }
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false, got " + show(v));
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string, got " + show(v));
  return v.get<std::string>();
}

double as_judgment(const json& v, const std::string& path) {
  if (v.is_number()) return as_positive(v, path);
  if (!v.is_string()) fail(path, "expected a number or a fraction string, got " + show(v));
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double d = std::stod(s, &used);
      if (used == s.size() && d > 0.0) return d;
    } else {
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      std::size_t un = 0, ud = 0;
      const double a = std::stod(num, &un), b = std::stod(den, &ud);
      if (un == num.size() && ud == den.size() && a > 0.0 && b > 0.0) return a / b;
    }
  } catch (const std::exception&) {
  }
  fail(path, "cannot read judgment " + show(v));
}

std::vector<std::size_t> as_axis(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty list, got " + show(v));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const std::uint64_t n = as_unsigned(v[i], p);
    if (n == 0) fail(p, "expected a positive integer, got 0");
    out.push_back(static_cast<std::size_t>(n));
  }
  return out;
}

sim::Range as_range(const json& v, const std::string& path, bool positive) {
  if (v.is_number()) {
    const double d = positive ? as_positive(v, path) : as_nonnegative(v, path);
    return {d, d};
  }
  if (!v.is_array() || v.size() != 2) fail(path, "expected [lo, hi], got " + show(v));
  sim::Range r{positive ? as_positive(v[0], path + "[0]") : as_nonnegative(v[0], path + "[0]"),
               positive ? as_positive(v[1], path + "[1]") : as_nonnegative(v[1], path + "[1]")};
  if (r.lo > r.hi) fail(path, "lower bound exceeds upper bound in " + show(v));
  return r;
}

json range_json(const sim::Range& r) { return json::array({r.lo, r.hi}); }

std::vector<std::vector<double>> as_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a list of rows, got " + show(v));
  std::vector<std::vector<double>> m;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail(rp, "expected a row, got " + show(v[i]));
    std::vector<double> row;
    for (std::size_t j = 0; j < v[i].size(); ++j) {
      row.push_back(as_judgment(v[i][j], rp + "[" + std::to_string(j) + "]"));
    }
    m.push_back(std::move(row));
  }
  try {
    mcdm::ComparisonMatrix check(m);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return m;
}

void read_amclbt_params(const json& v, const std::string& path, sched::SchedulerPolicy& p) {
  if (v.contains("wq")) p.wq = as_nonnegative(v["wq"], join(path, "wq"));
  if (v.contains("we")) p.we = as_nonnegative(v["we"], join(path, "we"));
  if (v.contains("normalizeSpeed")) {
    p.normalizeSpeed = as_bool(v["normalizeSpeed"], join(path, "normalizeSpeed"));
  }
  if (std::abs(p.wq + p.we - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "wq + we must equal 1 (wq = " << p.wq << ", we = " << p.we << ")";
    fail(path, os.str());
  }
}

sched::SchedulerPolicy read_policy(const json& v, const std::string& path,
                                   const sched::SchedulerPolicy& amclbtDefaults) {
  sched::SchedulerPolicy p;
  std::string name;
  if (v.is_string()) {
    name = v.get<std::string>();
  } else {
    only_keys(v, path, {"name", "wq", "we", "normalizeSpeed", "weights"});
    if (!v.contains("name")) fail(path, "policy object needs a name");
    name = as_string(v["name"], join(path, "name"));
  }
  try {
    p.kind = sched::parse_policy_kind(name);
  } catch (const std::invalid_argument&) {
    fail(path, "unknown policy name \"" + name + "\"");
  }
  if (p.kind == sched::PolicyKind::kAmclbt) {
    p.wq = amclbtDefaults.wq;
    p.we = amclbtDefaults.we;
    p.normalizeSpeed = amclbtDefaults.normalizeSpeed;
    if (v.is_object()) read_amclbt_params(v, path, p);
  } else if (v.is_object() && (v.contains("wq") || v.contains("we"))) {
    fail(path, "wq/we only apply to AMCLBT");
  }
  if (v.is_object() && v.contains("weights")) {
    const json& w = v["weights"];
    if (p.kind != sched::PolicyKind::kWeightedRoundRobin) {
      fail(join(path, "weights"), "only WEIGHTED_ROUND_ROBIN takes weights");
    }
    if (!w.is_array()) fail(join(path, "weights"), "expected a list, got " + show(w));
    for (std::size_t i = 0; i < w.size(); ++i) {
      p.wrrWeights.push_back(as_positive(w[i], join(path, "weights") + "[" + std::to_string(i) + "]"));
    }
  }
  return p;
}

sim::WorkloadSpec read_workload(const json& v, const std::string& path) {
  sim::WorkloadSpec w;
  if (v.is_string()) {
    try {
      w.mode = sim::parse_workload_mode(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(path, "unknown workload mode " + show(v));
    }
    return w;
  }
  only_keys(v, path, {"mode", "arrivalRate", "dataSize", "instructionLength", "deadline", "demand"});
  if (v.contains("mode")) {
    const std::string mode = as_string(v["mode"], join(path, "mode"));
    try {
      w.mode = sim::parse_workload_mode(mode);
    } catch (const std::invalid_argument&) {
      fail(join(path, "mode"), "unknown workload mode \"" + mode + "\"");
    }
  }
  if (v.contains("arrivalRate")) w.arrivalRate = as_nonnegative(v["arrivalRate"], join(path, "arrivalRate"));
  if (v.contains("dataSize")) w.dataSize = as_range(v["dataSize"], join(path, "dataSize"), false);
  if (v.contains("instructionLength")) {
    w.instructionLength = as_range(v["instructionLength"], join(path, "instructionLength"), true);
  }
  if (v.contains("deadline")) w.deadline = as_range(v["deadline"], join(path, "deadline"), true);
  if (v.contains("demand")) {
    const std::string dp = join(path, "demand");
    only_keys(v["demand"], dp, {"processing", "cache", "memory", "bandwidth", "storage"});
    for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
      if (v["demand"].contains(kResourceKeys[r])) {
        w.demand[r] = as_range(v["demand"][kResourceKeys[r]], join(dp, kResourceKeys[r]), false);
      }
    }
  }
  return w;
}

void read_cloud(const json& v, const std::string& path, cost::DeviceSpec& cloud) {
  only_keys(v, path, {"mips", "dataSpeed", "cpuFrequency", "energyBeta"});
  if (v.contains("mips")) cloud.mips = as_positive(v["mips"], join(path, "mips"));
  if (v.contains("dataSpeed")) cloud.dataSpeed = as_positive(v["dataSpeed"], join(path, "dataSpeed"));
  if (v.contains("cpuFrequency")) {
    cloud.cpuFrequency = as_positive(v["cpuFrequency"], join(path, "cpuFrequency"));
  }
  if (v.contains("energyBeta")) cloud.energyBeta = as_positive(v["energyBeta"], join(path, "energyBeta"));
}

void read_topology(const json& v, const std::string& path, sim::TopologySpec& t) {
  only_keys(v, path, {"nodes", "capacity", "mips", "dataSpeed", "cpuFrequency", "energyBudget",
                      "energyBeta", "availableTime", "cloud"});
  if (v.contains("nodes")) {
    const std::uint64_t n = as_unsigned(v["nodes"], join(path, "nodes"));
    if (n == 0) fail(join(path, "nodes"), "expected a positive integer, got 0");
    t.nodeCount = static_cast<std::size_t>(n);
  }
  if (v.contains("capacity")) {
    const std::string cp = join(path, "capacity");
    only_keys(v["capacity"], cp, {"processing", "cache", "memory", "bandwidth", "storage"});
    for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
      if (v["capacity"].contains(kResourceKeys[r])) {
        t.capacity[r] = as_range(v["capacity"][kResourceKeys[r]], join(cp, kResourceKeys[r]), true);
      }
    }
  }
  if (v.contains("mips")) t.mips = as_range(v["mips"], join(path, "mips"), true);
  if (v.contains("dataSpeed")) t.dataSpeed = as_range(v["dataSpeed"], join(path, "dataSpeed"), true);
  if (v.contains("cpuFrequency")) {
    t.cpuFrequency = as_range(v["cpuFrequency"], join(path, "cpuFrequency"), true);
  }
  if (v.contains("energyBudget")) {
    t.energyBudget = as_range(v["energyBudget"], join(path, "energyBudget"), false);
  }
  if (v.contains("energyBeta")) t.energyBeta = as_positive(v["energyBeta"], join(path, "energyBeta"));
  if (v.contains("availableTime") && !v["availableTime"].is_null()) {
    t.availableTime = as_positive(v["availableTime"], join(path, "availableTime"));
  }
  if (v.contains("cloud")) read_cloud(v["cloud"], join(path, "cloud"), t.cloud);
}

void read_deploy(const json& v, const std::string& path, cost::DeployModel& d) {
  only_keys(v, path, {"uplinkLatency", "overheadPerDevice", "wanPenalty"});
  if (v.contains("uplinkLatency")) {
    d.uplinkLatency = as_nonnegative(v["uplinkLatency"], join(path, "uplinkLatency"));
  }
  if (v.contains("overheadPerDevice")) {
    d.overheadPerDevice = as_nonnegative(v["overheadPerDevice"], join(path, "overheadPerDevice"));
  }
  if (v.contains("wanPenalty")) d.wanPenalty = as_nonnegative(v["wanPenalty"], join(path, "wanPenalty"));
}

ExperimentPlan read_plan(const json& root) {
  only_keys(root, "", {"taskCounts", "deviceCounts", "replications", "baseSeed", "policies",
                       "amclbt", "comparisonMatrix", "fuzzification", "workloads", "topology",
                       "deploy", "output", "fullGrid", "jobs", "recordWallClock"});
  ExperimentPlan plan = ExperimentPlan::defaults();

  if (root.contains("fullGrid") && as_bool(root["fullGrid"], "fullGrid")) plan.useFullGrid();
  if (root.contains("taskCounts")) plan.taskCounts = as_axis(root["taskCounts"], "taskCounts");
  if (root.contains("deviceCounts")) plan.deviceCounts = as_axis(root["deviceCounts"], "deviceCounts");
  if (root.contains("replications")) {
    plan.replications = static_cast<std::size_t>(as_unsigned(root["replications"], "replications"));
    if (plan.replications == 0) fail("replications", "must be >= 1, got 0");
  }
  if (root.contains("baseSeed")) plan.baseSeed = as_unsigned(root["baseSeed"], "baseSeed");
  if (root.contains("jobs")) plan.jobs = static_cast<std::size_t>(as_unsigned(root["jobs"], "jobs"));
  if (root.contains("recordWallClock")) {
    plan.recordWallClock = as_bool(root["recordWallClock"], "recordWallClock");
  }

  sched::SchedulerPolicy amclbt;
  if (root.contains("amclbt")) {
    only_keys(root["amclbt"], "amclbt", {"wq", "we", "normalizeSpeed"});
    read_amclbt_params(root["amclbt"], "amclbt", amclbt);
  }
  if (root.contains("policies")) {
    const json& ps = root["policies"];
    if (!ps.is_array() || ps.empty()) fail("policies", "expected a non-empty list, got " + show(ps));
    plan.policies.clear();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      plan.policies.push_back(read_policy(ps[i], "policies[" + std::to_string(i) + "]", amclbt));
    }
  } else {
    for (auto& p : plan.policies) {
      if (p.kind == sched::PolicyKind::kAmclbt) {
        p.wq = amclbt.wq;
        p.we = amclbt.we;
        p.normalizeSpeed = amclbt.normalizeSpeed;
      }
    }
  }

  if (root.contains("comparisonMatrix")) {
    plan.comparisonMatrix = as_matrix(root["comparisonMatrix"], "comparisonMatrix");
  }
  if (root.contains("fuzzification")) {
    const std::string f = as_string(root["fuzzification"], "fuzzification");
    if (f == "saaty") {
      plan.fuzzification = mcdm::Fuzzification::kSaaty;
    } else if (f == "crisp") {
      plan.fuzzification = mcdm::Fuzzification::kCrisp;
    } else {
      fail("fuzzification", "expected \"saaty\" or \"crisp\", got " + show(root["fuzzification"]));
    }
  }
  if (root.contains("workloads")) {
    const json& ws = root["workloads"];
    if (!ws.is_array() || ws.empty()) fail("workloads", "expected a non-empty list, got " + show(ws));
    plan.workloads.clear();
    for (std::size_t i = 0; i < ws.size(); ++i) {
      plan.workloads.push_back(read_workload(ws[i], "workloads[" + std::to_string(i) + "]"));
    }
  }
  if (root.contains("topology")) read_topology(root["topology"], "topology", plan.topology);
  if (root.contains("deploy")) read_deploy(root["deploy"], "deploy", plan.deploy);
  if (root.contains("output")) {
    only_keys(root["output"], "output", {"dir", "format"});
    if (root["output"].contains("dir")) plan.outputDir = as_string(root["output"]["dir"], "output.dir");
    if (root["output"].contains("format")) {
      const std::string f = as_string(root["output"]["format"], "output.format");
      try {
        plan.format = parse_report_format(f);
      } catch (const std::invalid_argument&) {
        fail("output.format", "expected \"csv\" or \"json\", got \"" + f + "\"");
      }
    }
  }
  plan.validate();
  return plan;
}

json policy_json(const sched::SchedulerPolicy& p) {
  json j{{"name", std::string(sched::to_string(p.kind))}};
  if (p.kind == sched::PolicyKind::kAmclbt) {
    j["wq"] = p.wq;
    j["we"] = p.we;
    j["normalizeSpeed"] = p.normalizeSpeed;
  }
  if (!p.wrrWeights.empty()) j["weights"] = p.wrrWeights;
  return j;
}

}  // namespace

std::string_view to_string(ReportFormat f) { return f == ReportFormat::kCsv ? "csv" : "json"; }

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

std::vector<std::vector<double>> default_comparison_matrix() {
  constexpr double t = 1.0 / 3.0;
  return {
      {1.0, 3.0, 2.0, 2.0, 1.0, 3.0},
      {t, 1.0, 3.0, 1.0, 3.0, 2.0},
      {0.5, t, 1.0, 2.0, 3.0, 2.0},
      {0.5, 1.0, 0.5, 1.0, 2.0, 3.0},
      {1.0, t, t, 0.5, 1.0, 2.0},
      {t, 0.5, 0.5, t, 0.5, 1.0},
  };
}

ExperimentPlan ExperimentPlan::defaults() {
  ExperimentPlan plan;
  for (sched::PolicyKind k :
       {sched::PolicyKind::kAmclbt, sched::PolicyKind::kRoundRobin,
        sched::PolicyKind::kWeightedRoundRobin, sched::PolicyKind::kRandom,
        sched::PolicyKind::kLeastLoaded}) {
    sched::SchedulerPolicy p;
    p.kind = k;
    plan.policies.push_back(p);
  }
  sim::WorkloadSpec hetero;
  hetero.mode = sim::WorkloadMode::kHeterogeneous;
  sim::WorkloadSpec homo;
  homo.mode = sim::WorkloadMode::kHomogeneous;
  plan.workloads = {hetero, homo};
  return plan;
}

void ExperimentPlan::useFullGrid() {
  taskCounts = kFullTaskCounts;
  deviceCounts = kFullDeviceCounts;
}

void ExperimentPlan::validate() const {
  if (replications == 0) throw ConfigError("replications: must be >= 1");
  if (policies.empty()) throw ConfigError("policies: at least one policy is required");
  if (workloads.empty()) throw ConfigError("workloads: at least one workload is required");
  if (taskCounts.empty()) throw ConfigError("taskCounts: must not be empty");
  if (deviceCounts.empty()) throw ConfigError("deviceCounts: must not be empty");
  for (const auto& p : policies) {
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("policies: ") + e.what());
    }
  }
  try {
    mcdm::ComparisonMatrix m(comparisonMatrix);
    if (m.size() != 6) throw std::invalid_argument("AMCLBT needs a 6x6 matrix");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("comparisonMatrix: ") + e.what());
  }
  for (std::size_t d : deviceCounts) {
    if (d < topology.nodeCount) {
      throw ConfigError("deviceCounts: " + std::to_string(d) + " devices cannot fill " +
                        std::to_string(topology.nodeCount) + " nodes");
    }
  }
  try {
    for (const auto& w : workloads) w.validate();
    sim::TopologySpec t = topology;
    t.deviceCount = deviceCounts.front();
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

mcdm::CriteriaWeights ExperimentPlan::criteriaWeights() const {
  const mcdm::CriteriaWeights w =
      mcdm::fahp_weights(mcdm::ComparisonMatrix(comparisonMatrix), fuzzification);
  return sched::amclbt_criteria(w.weights);
}

ExperimentPlan parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

ExperimentPlan parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return read_plan(root);
}

std::vector<std::vector<double>> parse_matrix_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (root.is_object()) {
    only_keys(root, "", {"matrix"});
    if (!root.contains("matrix")) fail("matrix", "missing");
    return as_matrix(root["matrix"], "matrix");
  }
  return as_matrix(root, "matrix");
}

std::string dump_plan(const ExperimentPlan& plan) {
  json j;
  j["taskCounts"] = plan.taskCounts;
  j["deviceCounts"] = plan.deviceCounts;
  j["replications"] = plan.replications;
  j["baseSeed"] = plan.baseSeed;
  j["jobs"] = plan.jobs;
  j["recordWallClock"] = plan.recordWallClock;
  j["policies"] = json::array();
  for (const auto& p : plan.policies) j["policies"].push_back(policy_json(p));
  j["comparisonMatrix"] = plan.comparisonMatrix;
  j["fuzzification"] = plan.fuzzification == mcdm::Fuzzification::kSaaty ? "saaty" : "crisp";

  j["workloads"] = json::array();
  for (const auto& w : plan.workloads) {
    json wj{{"mode", std::string(sim::to_string(w.mode))},
            {"arrivalRate", w.arrivalRate},
            {"dataSize", range_json(w.dataSize)},
            {"instructionLength", range_json(w.instructionLength)},
            {"deadline", range_json(w.deadline)}};
    for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
      wj["demand"][kResourceKeys[r]] = range_json(w.demand[r]);
    }
    j["workloads"].push_back(wj);
  }

  const sim::TopologySpec& t = plan.topology;
  json tj{{"nodes", t.nodeCount},
          {"mips", range_json(t.mips)},
          {"dataSpeed", range_json(t.dataSpeed)},
          {"cpuFrequency", range_json(t.cpuFrequency)},
          {"energyBudget", range_json(t.energyBudget)},
          {"energyBeta", t.energyBeta},
          {"availableTime", t.availableTime ? json(*t.availableTime) : json(nullptr)},
          {"cloud",
           {{"mips", t.cloud.mips},
            {"dataSpeed", t.cloud.dataSpeed},
            {"cpuFrequency", t.cloud.cpuFrequency},
            {"energyBeta", t.cloud.energyBeta}}}};
  for (std::size_t r = 0; r < cost::kResourceCount; ++r) {
    tj["capacity"][kResourceKeys[r]] = range_json(t.capacity[r]);
  }
  j["topology"] = tj;
  j["deploy"] = {{"uplinkLatency", plan.deploy.uplinkLatency},
                 {"overheadPerDevice", plan.deploy.overheadPerDevice},
                 {"wanPenalty", plan.deploy.wanPenalty}};
  j["output"] = {{"dir", plan.outputDir}, {"format", std::string(to_string(plan.format))}};
  return j.dump(2);
}

}  // namespace foglb::experiment
