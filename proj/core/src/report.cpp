// Copyright 2026 The driftbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "driftbench/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "driftbench/error.hpp"

namespace driftbench {

using nlohmann::json;

namespace {

json nd_or(const std::optional<double>& v) { return v ? json(*v) : json("ND"); }

std::string cell(const std::optional<double>& v) {
  if (!v) return "ND";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << *v;
  return ss.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string runs_to_json(std::span<const RunReport> runs) {
  json arr = json::array();
  for (const auto& r : runs) {
    std::vector<std::string> trace;
    for (auto d : r.decisions) trace.emplace_back(to_string(d));
    arr.push_back({{"detector", r.detector},
                   {"group", r.group},
                   {"dataset", r.dataset},
                   {"condition", r.condition},
                   {"seed", r.seed},
                   {"decisions", trace},
                   {"drift_batch", r.drift_batch},
                   {"batch_count", r.batch_count},
                   {"detected", r.detected ? json(*r.detected) : json("ND")},
                   {"latency", nd_or(r.latency)},
                   {"fpr", nd_or(r.fpr)},
                   {"plain_fpr", r.plain_fpr}});
  }
  return arr.dump(1);
}

std::vector<RunReport> runs_from_json(std::string_view text) {
  std::vector<RunReport> out;
  try {
    for (const auto& j : json::parse(text)) {
      RunReport r;
      r.detector = j.at("detector").get<std::string>();
      r.group = j.at("group").get<std::string>();
      r.dataset = j.at("dataset").get<std::string>();
      r.condition = j.at("condition").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      for (const auto& d : j.at("decisions")) {
        const auto s = d.get<std::string>();
        if (s == "drift") r.decisions.push_back(DriftDecision::drift);
        else if (s == "warning") r.decisions.push_back(DriftDecision::warning);
        else if (s == "no-drift") r.decisions.push_back(DriftDecision::no_drift);
        else throw ParseError("unknown decision '" + s + "'");
      }
      r.drift_batch = j.at("drift_batch").get<std::size_t>();
      // Derived fields are recomputed rather than trusted.
      score(r);
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run report: ") + e.what());
  }
  return out;
}

std::string aggregates_to_csv(std::span<const AggregateReport> aggregates) {
  std::string out = "dataset,condition,detector,group,seeds,mean_latency,mean_fpr,mean_plain_fpr,mdp,excluded\n";
  for (const auto& a : aggregates) {
    out += csv_field(a.dataset) + "," + csv_field(a.condition) + "," + csv_field(a.detector) + "," + a.group +
           "," + std::to_string(a.seeds) + "," + cell(a.mean_latency) + "," + cell(a.mean_fpr) + "," +
           fixed(a.mean_plain_fpr, 4) + "," + fixed(a.mdp, 2) + "," + (a.excluded ? "1" : "0") + "\n";
  }
  return out;
}

std::string width_plot_csv(std::span<const SweepPoint> points) {
  std::string out = "detector,dataset,width,mean_latency,mean_fpr,mdp\n";
  for (const auto& p : points) {
    for (const auto& a : p.aggregates) {
      out += csv_field(a.detector) + "," + csv_field(a.dataset) + "," + std::to_string(p.condition.width) + "," +
             cell(a.mean_latency) + "," + cell(a.mean_fpr) + "," + fixed(a.mdp, 2) + "\n";
    }
  }
  return out;
}

std::string summary_table_csv(std::span<const AggregateReport> aggregates) {
  std::vector<std::string> columns;
  std::vector<std::string> rows;
  std::map<std::pair<std::string, std::string>, std::string> cells;
  for (const auto& a : aggregates) {
    const std::string col = a.dataset + " " + a.condition;
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    if (std::find(rows.begin(), rows.end(), a.detector) == rows.end()) rows.push_back(a.detector);
    cells[{a.detector, col}] = cell(a.mean_latency) + " / " + cell(a.mean_fpr) + " (" + fixed(a.mdp, 1) + ")";
  }
  std::string out = "detector";
  for (const auto& c : columns) out += "," + csv_field(c);
  out += "\n";
  for (const auto& r : rows) {
    out += csv_field(r);
    for (const auto& c : columns) {
      const auto it = cells.find({r, c});
      out += "," + (it == cells.end() ? std::string() : it->second);
    }
    out += "\n";
  }
  return out;
}

}  // namespace driftbench
