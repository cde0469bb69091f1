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

#include "driftbench/pipeline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "driftbench/error.hpp"

namespace driftbench {

FeaturePipeline FeaturePipeline::fit(const RawTable& reference) {
  if (reference.rows() == 0) throw EmptyInputError("cannot fit a pipeline on an empty reference");
  FeaturePipeline p;
  for (const auto& c : reference.columns()) {
    if (c.kind == ColumnKind::numeric) {
      p.numeric_.push_back(c.name);
      p.output_names_.push_back(c.name);
    }
  }
  for (const auto& c : reference.columns()) {
    if (c.kind != ColumnKind::categorical) continue;
    CategoryBlock block{c.name, {}};
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& v : c.categories) {
      if (seen.emplace(v, block.categories.size()).second) block.categories.push_back(v);
    }
    for (const auto& v : block.categories) p.output_names_.push_back(c.name + "=" + v);
    p.categorical_.push_back(std::move(block));
  }
  p.fitted_ = true;
  p.scaler_ = MinMaxScaler::fit(p.encode(reference));
  for (std::size_t j = 0; j < p.output_names_.size(); ++j) {
    if (p.scaler_.minimums()[j] == p.scaler_.maximums()[j]) {
      p.warnings_.push_back("column '" + p.output_names_[j] + "' is constant on the reference; scaled to 0");
    }
  }
  return p;
}

Matrix FeaturePipeline::encode(const RawTable& rows) const {
  if (!fitted_) throw UsageError("pipeline used before fit");
  Matrix out(rows.rows(), output_names_.size());
  std::size_t offset = 0;
  for (const auto& name : numeric_) {
    const auto idx = rows.find(name);
    if (!idx || rows.column(*idx).kind != ColumnKind::numeric) {
      throw SchemaError("input lacks numeric column '" + name + "'");
    }
    const auto& values = rows.column(*idx).numbers;
    for (std::size_t r = 0; r < rows.rows(); ++r) out(r, offset) = values[r];
    ++offset;
  }
  for (const auto& block : categorical_) {
    const auto idx = rows.find(block.column);
    if (!idx || rows.column(*idx).kind != ColumnKind::categorical) {
      throw SchemaError("input lacks categorical column '" + block.column + "'");
    }
    std::unordered_map<std::string_view, std::size_t> lookup;
    for (std::size_t i = 0; i < block.categories.size(); ++i) lookup.emplace(block.categories[i], i);
    const auto& values = rows.column(*idx).categories;
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      // Unseen categories leave the whole block at zero.
      if (auto it = lookup.find(values[r]); it != lookup.end()) out(r, offset + it->second) = 1.0;
    }
    offset += block.categories.size();
  }
  return out;
}

Matrix FeaturePipeline::transform(const RawTable& rows) const { return scaler_.transform(encode(rows)); }

// ---------------------------------------------------------------- SMOTE

namespace {

// k nearest neighbours (by squared Euclidean distance, ties by index) of
// every row of `x` among the other rows.
std::vector<std::vector<std::size_t>> nearest_neighbours(const Eigen::MatrixXd& x, std::size_t k) {
  const Eigen::Index n = x.rows();
  const Eigen::VectorXd norms = x.rowwise().squaredNorm();
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(n));
  constexpr Eigen::Index kBlock = 256;
  std::vector<std::pair<double, std::size_t>> cand(static_cast<std::size_t>(n));
  for (Eigen::Index b = 0; b < n; b += kBlock) {
    const Eigen::Index rows = std::min(kBlock, n - b);
    Eigen::MatrixXd d = -2.0 * x.middleRows(b, rows) * x.transpose();
    d.colwise() += norms.segment(b, rows);
    d.rowwise() += norms.transpose();
    for (Eigen::Index i = 0; i < rows; ++i) {
      std::size_t m = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == b + i) continue;
        cand[m++] = {std::max(0.0, d(i, j)), static_cast<std::size_t>(j)};
      }
      std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k),
                        cand.begin() + static_cast<std::ptrdiff_t>(m));
      auto& nn = out[static_cast<std::size_t>(b + i)];
      for (std::size_t t = 0; t < k; ++t) nn.push_back(cand[t].second);
    }
  }
  return out;
}

}  // namespace

SmoteResult smote(const Matrix& samples, std::span<const int> labels, std::size_t k, std::uint64_t seed) {
  if (samples.rows() != labels.size()) throw DimensionError("label count does not match sample count");
  if (k == 0) throw ParameterError("SMOTE needs k >= 1");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw ParameterError("SMOTE expects labels in {0, 1}");
    by_class[labels[i]].push_back(i);
  }
  if (by_class[0].empty() || by_class[1].empty()) throw DegenerateInputError("SMOTE needs both classes");

  SmoteResult out;
  out.samples = samples;
  out.labels.assign(labels.begin(), labels.end());
  out.original_rows = samples.rows();
  const int minority = by_class[1].size() < by_class[0].size() ? 1 : 0;
  const auto& pool = by_class[minority];
  const std::size_t needed = by_class[1 - minority].size() - pool.size();
  if (needed == 0) return out;
  if (pool.size() <= k) throw NeighborError("minority class needs more than k samples");

  const std::size_t d = samples.cols();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(pool.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = samples(pool[i], c);
  }
  const auto nn = nearest_neighbours(x, k);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_base(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_nn(0, k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  out.samples.reserve_rows(samples.rows() + needed);
  std::vector<double> row(d);
  for (std::size_t s = 0; s < needed; ++s) {
    const std::size_t a = pick_base(rng);
    const std::size_t b = nn[a][pick_nn(rng)];
    const double u = unit(rng);
    const auto xa = samples.row(pool[a]);
    const auto xb = samples.row(pool[b]);
    for (std::size_t c = 0; c < d; ++c) row[c] = xa[c] + u * (xb[c] - xa[c]);
    out.samples.append_row(row);
    out.labels.push_back(minority);
    out.parents.emplace_back(pool[a], pool[b]);
    out.weights.push_back(u);
  }
  return out;
}

}  // namespace driftbench
