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

#pragma once

// Batch-level scoring of detector traces. std::nullopt stands for ND
// ("nothing detected") throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driftbench/decision.hpp"

namespace driftbench {

/// (k - j) / |B|. ND propagates; k < j or k >= |B| is a usage error.
std::optional<double> latency(std::size_t j, std::optional<std::size_t> k, std::size_t batch_count);

/// First batch index >= j with a drift verdict.
std::optional<std::size_t> first_detection(std::span<const DriftDecision> decisions, std::size_t j);

/// Drift verdicts on batches < j, divided by j. ND when the trace has no
/// drift verdict at all.
std::optional<double> false_positive_rate(std::span<const DriftDecision> decisions, std::size_t j);

/// Same ratio without the ND convention.
double plain_false_positive_rate(std::span<const DriftDecision> decisions, std::size_t j);

struct RunReport {
  std::string detector;    // e.g. "ADWIN+NB", "kdqTrees-KL"
  std::string group;       // "ERB" or "DDB"
  std::string dataset;
  std::string condition;   // e.g. "abrupt", "gradual-1000/noise-0.1"
  std::uint64_t seed = 0;
  std::vector<DriftDecision> decisions;
  std::size_t drift_batch = 0;
  std::size_t batch_count = 0;
  std::optional<std::size_t> detected;
  std::optional<double> latency;
  std::optional<double> fpr;
  double plain_fpr = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Fills detected, latency, fpr and plain_fpr from the decisions.
void score(RunReport& report);

/// Fraction of reports with latency ND. Reports must share detector,
/// dataset and condition (usage error otherwise); empty input is a usage
/// error too.
double miss_detection_probability(std::span<const RunReport> reports);

struct AggregateReport {
  std::string detector;
  std::string group;
  std::string dataset;
  std::string condition;
  std::size_t seeds = 0;
  std::optional<double> mean_latency;  // over detecting seeds
  std::optional<double> mean_fpr;      // over seeds with a defined FPR
  double mean_plain_fpr = 0.0;
  double mdp = 0.0;
  bool excluded = false;

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

/// Groups by (dataset, condition, detector), sorted by that key, so the
/// result does not depend on report order.
std::vector<AggregateReport> aggregate(std::span<const RunReport> reports);

/// Sets excluded iff MDP > 0.
void filter_by_mdp(std::vector<AggregateReport>& aggregates);

}  // namespace driftbench
