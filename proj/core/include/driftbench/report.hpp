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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftbench/evaluation.hpp"
#include "driftbench/harness.hpp"

namespace driftbench {

/// JSON array of run records; ND is written as the string "ND".
std::string runs_to_json(std::span<const RunReport> runs);
std::vector<RunReport> runs_from_json(std::string_view text);

/// dataset,condition,detector,group,seeds,mean_latency,mean_fpr,mean_plain_fpr,mdp,excluded
std::string aggregates_to_csv(std::span<const AggregateReport> aggregates);

/// detector,dataset,width,mean_latency,mean_fpr,mdp (one row per detector
/// and sweep point).
std::string width_plot_csv(std::span<const SweepPoint> points);

/// Compact detector x dataset table in the layout of the published tables:
/// one row per detector, "L / FPR (MDP)" cells.
std::string summary_table_csv(std::span<const AggregateReport> aggregates);

}  // namespace driftbench
