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

#include "driftbench/scaler.hpp"

#include <algorithm>
#include <limits>

#include "driftbench/error.hpp"

namespace driftbench {

MinMaxScaler MinMaxScaler::fit(const Matrix& reference) {
  if (reference.rows() == 0) throw EmptyInputError("cannot fit a scaler on no rows");
  MinMaxScaler s;
  s.min_.assign(reference.cols(), std::numeric_limits<double>::infinity());
  s.max_.assign(reference.cols(), -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < reference.rows(); ++r) {
    auto row = reference.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      s.min_[c] = std::min(s.min_[c], row[c]);
      s.max_[c] = std::max(s.max_[c], row[c]);
    }
  }
  return s;
}

double MinMaxScaler::scale(std::size_t column, double value) const {
  const double lo = min_[column];
  const double hi = max_[column];
  if (!(hi > lo)) return 0.0;
  return std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
}

Matrix MinMaxScaler::transform(const Matrix& data) const {
  if (data.cols() != min_.size()) throw DimensionError("scaler column count mismatch");
  Matrix out(data.rows(), data.cols());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) out(r, c) = scale(c, data(r, c));
  }
  return out;
}

}  // namespace driftbench
