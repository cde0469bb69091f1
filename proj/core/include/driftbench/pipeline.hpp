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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "driftbench/matrix.hpp"
#include "driftbench/scaler.hpp"
#include "driftbench/table.hpp"

namespace driftbench {

/// One-hot encoding followed by min-max scaling, both fit on reference rows
/// only. Output layout: numeric columns in table order, then one block per
/// categorical column with categories in order of first appearance.
class FeaturePipeline {
 public:
  static FeaturePipeline fit(const RawTable& reference);

  [[nodiscard]] Matrix transform(const RawTable& rows) const;
  /// One-hot encoding only (no scaling).
  [[nodiscard]] Matrix encode(const RawTable& rows) const;

  [[nodiscard]] bool fitted() const noexcept { return fitted_; }
  [[nodiscard]] std::size_t output_dimensions() const noexcept { return output_names_.size(); }
  [[nodiscard]] const std::vector<std::string>& output_names() const noexcept { return output_names_; }
  [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  [[nodiscard]] const MinMaxScaler& scaler() const noexcept { return scaler_; }

  /// Fitted state only; warnings are diagnostics and do not take part.
  friend bool operator==(const FeaturePipeline& a, const FeaturePipeline& b) {
    return a.fitted_ == b.fitted_ && a.numeric_ == b.numeric_ && a.categorical_ == b.categorical_ &&
           a.output_names_ == b.output_names_ && a.scaler_ == b.scaler_;
  }

 private:
  struct CategoryBlock {
    std::string column;
    std::vector<std::string> categories;
    friend bool operator==(const CategoryBlock&, const CategoryBlock&) = default;
  };

  bool fitted_ = false;
  std::vector<std::string> numeric_;
  std::vector<CategoryBlock> categorical_;
  std::vector<std::string> output_names_;
  std::vector<std::string> warnings_;
  MinMaxScaler scaler_;
};

struct SmoteResult {
  Matrix samples;
  std::vector<int> labels;
  // For every synthetic row (appended after the originals, in order): the
  // indices of its two parents in the input matrix and the interpolation
  // weight u, so that row = x[first] + u * (x[second] - x[first]).
  std::vector<std::pair<std::size_t, std::size_t>> parents;
  std::vector<double> weights;
  std::size_t original_rows = 0;
};

/// Oversamples the minority class to parity with the majority by
/// interpolating between a random minority sample and one of its k nearest
/// minority neighbours. Requires exactly two classes.
SmoteResult smote(const Matrix& samples, std::span<const int> labels, std::size_t k, std::uint64_t seed);

}  // namespace driftbench
