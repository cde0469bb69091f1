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

#include "driftbench/matrix.hpp"

#include <algorithm>

#include "driftbench/error.hpp"

namespace driftbench {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m;
  for (const auto& r : rows) {
    std::vector<double> tmp(r);
    m.append_row(tmp);
  }
  return m;
}

Matrix Matrix::from_column(std::span<const double> values) {
  Matrix m(values.size(), 1);
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  if (c >= cols_) throw DimensionError("column index out of range");
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::slice_rows(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw DimensionError("row slice out of range");
  Matrix m(end - begin, cols_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), m.data_.begin());
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix m(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) throw DimensionError("row index out of range");
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), m.row(i).begin());
  }
  return m;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw DimensionError("appended row has wrong width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

}  // namespace driftbench
