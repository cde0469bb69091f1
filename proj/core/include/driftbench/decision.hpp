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

#include <algorithm>
#include <string_view>

namespace driftbench {

/// Per-batch (or per-sample) verdict. Ordered so that std::max gives the
/// dominant verdict: drift > warning > no_drift.
enum class DriftDecision { no_drift = 0, warning = 1, drift = 2 };

constexpr DriftDecision dominant(DriftDecision a, DriftDecision b) noexcept {
  return std::max(a, b);
}

constexpr std::string_view to_string(DriftDecision d) noexcept {
  switch (d) {
    case DriftDecision::no_drift: return "no-drift";
    case DriftDecision::warning: return "warning";
    case DriftDecision::drift: return "drift";
  }
  return "?";
}

}  // namespace driftbench
