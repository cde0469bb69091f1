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

#include "driftbench/evaluation.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "driftbench/error.hpp"

namespace driftbench {

std::optional<double> latency(std::size_t j, std::optional<std::size_t> k, std::size_t batch_count) {
  if (!k) return std::nullopt;
  if (batch_count == 0) throw UsageError("latency needs at least one batch");
  if (*k < j) throw UsageError("a flag before the drift batch is a false positive, not a detection");
  if (*k >= batch_count) throw UsageError("detected batch index beyond the batch count");
  return static_cast<double>(*k - j) / static_cast<double>(batch_count);
}

std::optional<std::size_t> first_detection(std::span<const DriftDecision> decisions, std::size_t j) {
  for (std::size_t k = j; k < decisions.size(); ++k) {
    if (decisions[k] == DriftDecision::drift) return k;
  }
  return std::nullopt;
}

double plain_false_positive_rate(std::span<const DriftDecision> decisions, std::size_t j) {
  if (j == 0) throw UsageError("false positive rate needs at least one clean batch");
  const std::size_t clean = std::min(j, decisions.size());
  const auto flagged = std::count(decisions.begin(), decisions.begin() + static_cast<std::ptrdiff_t>(clean),
                                  DriftDecision::drift);
  return static_cast<double>(flagged) / static_cast<double>(j);
}

std::optional<double> false_positive_rate(std::span<const DriftDecision> decisions, std::size_t j) {
  const double plain = plain_false_positive_rate(decisions, j);
  if (std::find(decisions.begin(), decisions.end(), DriftDecision::drift) == decisions.end()) return std::nullopt;
  return plain;
}

void score(RunReport& r) {
  r.batch_count = r.decisions.size();
  r.detected = first_detection(r.decisions, r.drift_batch);
  r.latency = latency(r.drift_batch, r.detected, r.batch_count);
  r.fpr = false_positive_rate(r.decisions, r.drift_batch);
  r.plain_fpr = plain_false_positive_rate(r.decisions, r.drift_batch);
}

double miss_detection_probability(std::span<const RunReport> reports) {
  if (reports.empty()) throw UsageError("MDP over zero runs");
  std::size_t misses = 0;
  for (const auto& r : reports) {
    if (r.detector != reports.front().detector || r.dataset != reports.front().dataset ||
        r.condition != reports.front().condition) {
      throw UsageError("MDP mixes detectors, datasets or conditions");
    }
    misses += r.latency ? 0 : 1;
  }
  return static_cast<double>(misses) / static_cast<double>(reports.size());
}

std::vector<AggregateReport> aggregate(std::span<const RunReport> reports) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<RunReport>> groups;
  for (const auto& r : reports) groups[{r.dataset, r.condition, r.detector}].push_back(r);

  std::vector<AggregateReport> out;
  for (auto& [key, runs] : groups) {
    // Seed order must not matter; sum in seed order.
    std::sort(runs.begin(), runs.end(), [](const RunReport& a, const RunReport& b) { return a.seed < b.seed; });
    AggregateReport a;
    std::tie(a.dataset, a.condition, a.detector) = key;
    a.group = runs.front().group;
    a.seeds = runs.size();
    a.mdp = miss_detection_probability(runs);
    double lat = 0.0, fpr = 0.0, plain = 0.0;
    std::size_t n_lat = 0, n_fpr = 0;
    for (const auto& r : runs) {
      if (r.latency) {
        lat += *r.latency;
        ++n_lat;
      }
      if (r.fpr) {
        fpr += *r.fpr;
        ++n_fpr;
      }
      plain += r.plain_fpr;
    }
    if (n_lat) a.mean_latency = lat / static_cast<double>(n_lat);
    if (n_fpr) a.mean_fpr = fpr / static_cast<double>(n_fpr);
    a.mean_plain_fpr = plain / static_cast<double>(runs.size());
    out.push_back(std::move(a));
  }
  return out;
}

void filter_by_mdp(std::vector<AggregateReport>& aggregates) {
  for (auto& a : aggregates) a.excluded = a.mdp > 0.0;
}

}  // namespace driftbench
