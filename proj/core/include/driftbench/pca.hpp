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
#include <vector>

#include "driftbench/matrix.hpp"

namespace driftbench {

/// Principal components of a reference sample. `components` is
/// features x retained, orthonormal columns ordered by decreasing variance;
/// each column's largest-magnitude entry is positive.
struct PcaModel {
  std::vector<double> mean;
  Matrix components;
  std::vector<double> explained_variance;  // retained components only
  std::vector<double> all_variances;       // full sorted spectrum
  double retained_fraction = 0.95;

  [[nodiscard]] std::size_t input_dimensions() const noexcept { return mean.size(); }
  [[nodiscard]] std::size_t output_dimensions() const noexcept { return components.cols(); }

  /// Centers `data` with the reference mean and projects it onto the components.
  [[nodiscard]] Matrix project(const Matrix& data) const;
};

/// Eigendecomposition of the (n-1)-normalized sample covariance; keeps the
/// shortest prefix of components whose cumulative variance reaches
/// `retained_fraction` of the total. Zero-variance directions are never kept.
PcaModel fit_pca(const Matrix& reference, double retained_fraction = 0.95);

}  // namespace driftbench
