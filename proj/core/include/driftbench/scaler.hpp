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

#include <vector>

#include "driftbench/matrix.hpp"

namespace driftbench {

/// Per-column min-max scaling into [0,1], fit once and applied with
/// clamping. A constant column (min == max) maps to 0.
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const Matrix& reference);

  [[nodiscard]] Matrix transform(const Matrix& data) const;
  [[nodiscard]] double scale(std::size_t column, double value) const;

  [[nodiscard]] const std::vector<double>& minimums() const noexcept { return min_; }
  [[nodiscard]] const std::vector<double>& maximums() const noexcept { return max_; }

  friend bool operator==(const MinMaxScaler&, const MinMaxScaler&) = default;

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

}  // namespace driftbench
