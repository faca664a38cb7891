// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "json.hpp"

namespace foglb::experiment {

using nlohmann::json;

namespace {

const char* const kMetricNames[] = {"devicesUsed",   "lbVariance",   "avgUtilization",
                                    "avgTurnaround", "offloadCount", "constraint16Violations"};

double& metric_ref(MetricValues& v, std::string_view name) {
  if (name == "devicesUsed") return v.devicesUsed;
  if (name == "lbVariance") return v.lbVariance;
  if (name == "avgUtilization") return v.avgUtilization;
  if (name == "avgTurnaround") return v.avgTurnaround;
  if (name == "offloadCount") return v.offloadCount;
  if (name == "constraint16Violations") return v.constraint16Violations;
  throw ReportError("unknown metric '" + std::string(name) + "'");
}

double metric(const MetricValues& v, std::string_view name) {
  return metric_ref(const_cast<MetricValues&>(v), name);
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw ReportError("failed writing '" + path.string() + "'");
}

template <typename T>
T field(const json& obj, const char* key, std::size_t index) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ReportError("row " + std::to_string(index) + "." + key + ": " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"runId", "policy", "taskCount", "deviceCount", "seed"};
    for (const char* m : kMetricNames) c.emplace_back(m);
    c.emplace_back("wallClockMs");
    c.emplace_back("workload");
    for (const char* m : kMetricNames) c.push_back(std::string(m) + "Std");
    return c;
  }();
  return cols;
}

const std::vector<std::string>& series_metrics() {
  static const std::vector<std::string> m{"devicesUsed", "lbVariance", "avgUtilization",
                                          "avgTurnaround"};
  return m;
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const ReportRow& r : rows) {
    out += csv_field(r.runId) + "," + csv_field(r.policy) + "," + std::to_string(r.taskCount) +
           "," + std::to_string(r.deviceCount) + "," + (r.seed ? std::to_string(*r.seed) : "");
    for (const char* m : kMetricNames) out += "," + fixed6(metric(r.values, m));
    out += "," + fixed6(r.wallClockMs) + "," + csv_field(r.workload);
    for (const char* m : kMetricNames) out += "," + (r.stddev ? fixed6(metric(*r.stddev, m)) : "");
    out += '\n';
  }
  return out;
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
  json arr = json::array();
  for (const ReportRow& r : rows) {
    json o;
    o["runId"] = r.runId;
    o["policy"] = r.policy;
    o["taskCount"] = r.taskCount;
    o["deviceCount"] = r.deviceCount;
    o["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    for (const char* m : kMetricNames) o[m] = metric(r.values, m);
    o["wallClockMs"] = r.wallClockMs;
    o["workload"] = r.workload;
    for (const char* m : kMetricNames) {
      o[std::string(m) + "Std"] = r.stddev ? json(metric(*r.stddev, m)) : json(nullptr);
    }
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::vector<ReportRow> rows_from_json(std::string_view text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ReportError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw ReportError("report must be a JSON array");
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& o = arr[i];
    ReportRow r;
    r.runId = field<std::string>(o, "runId", i);
    r.policy = field<std::string>(o, "policy", i);
    r.workload = field<std::string>(o, "workload", i);
    r.taskCount = field<std::size_t>(o, "taskCount", i);
    r.deviceCount = field<std::size_t>(o, "deviceCount", i);
    if (o.contains("seed") && !o["seed"].is_null()) r.seed = field<std::uint64_t>(o, "seed", i);
    for (const char* m : kMetricNames) metric_ref(r.values, m) = field<double>(o, m, i);
    r.wallClockMs = field<double>(o, "wallClockMs", i);
    const std::string firstStd = std::string(kMetricNames[0]) + "Std";
    if (o.contains(firstStd) && !o[firstStd].is_null()) {
      MetricValues sd;
      for (const char* m : kMetricNames) {
        const std::string key = std::string(m) + "Std";
        metric_ref(sd, m) = field<double>(o, key.c_str(), i);
      }
      r.stddev = sd;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SeriesPoint> plot_series(const std::vector<ReportRow>& rows, std::string_view metricName,
                                     std::string_view axis) {
  if (axis != "taskCount" && axis != "deviceCount") {
    throw ReportError("unknown series axis '" + std::string(axis) + "'");
  }
  const bool haveSummaries =
      std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.isSummary(); });

  // Policies and workloads keep first-appearance order; axis values ascend.
  std::vector<std::string> policies, workloads;
  auto rank = [](std::vector<std::string>& seen, const std::string& s) {
    auto it = std::find(seen.begin(), seen.end(), s);
    if (it != seen.end()) return static_cast<std::size_t>(it - seen.begin());
    seen.push_back(s);
    return seen.size() - 1;
  };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<double, std::size_t>> acc;
  for (const ReportRow& r : rows) {
    if (r.isSummary() != haveSummaries) continue;
    const std::size_t x = axis == "taskCount" ? r.taskCount : r.deviceCount;
    auto& [sum, n] = acc[{rank(policies, r.policy), rank(workloads, r.workload), x}];
    sum += metric(r.values, metricName);
    ++n;
  }
  std::vector<SeriesPoint> out;
  for (const auto& [key, v] : acc) {
    const auto& [p, w, x] = key;
    out.push_back({policies[p], workloads[w], x, v.first / static_cast<double>(v.second)});
  }
  return out;
}

std::vector<std::filesystem::path> emit_report(const std::vector<ReportRow>& rows,
                                               ReportFormat format,
                                               const std::filesystem::path& dir) {
  if (rows.empty()) throw ReportError("no rows to report");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ReportError("cannot create output directory '" + dir.string() + "'");
  }

  std::vector<std::filesystem::path> written;
  if (format == ReportFormat::kCsv) {
    written.push_back(dir / "report.csv");
    write_file(written.back(), to_csv(rows));
  } else {
    written.push_back(dir / "report.json");
    write_file(written.back(), rows_to_json(rows));
  }

  for (const std::string& m : series_metrics()) {
    for (const char* axis : {"taskCount", "deviceCount"}) {
      std::string text = std::string("policy,workload,") + axis + ",mean\n";
      for (const SeriesPoint& p : plot_series(rows, m, axis)) {
        text += csv_field(p.policy) + "," + csv_field(p.workload) + "," +
                std::to_string(p.axisValue) + "," + fixed6(p.mean) + "\n";
      }
      written.push_back(dir / ("series_" + m + "_vs_" + axis + ".csv"));
      write_file(written.back(), text);
    }
  }
  return written;
}

}  // namespace foglb::experiment
