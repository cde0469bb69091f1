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

#include "driftbench/kdq_tree.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "driftbench/error.hpp"

namespace driftbench {

namespace {

double unit_clamp(double v) {
  if (!(v > 0.0)) return 0.0;  // also maps NaN to 0
  return v > 1.0 ? 1.0 : v;
}

}  // namespace

KdqTree KdqTree::build(const Matrix& reference, KdqParams params) {
  if (reference.cols() == 0) throw DimensionError("kdq-tree needs at least one dimension");
  if (reference.rows() == 0) throw EmptyInputError("kdq-tree reference is empty");
  if (params.max_leaf_count == 0) throw ParameterError("max_leaf_count must be positive");
  if (!(params.min_side > 0.0)) throw ParameterError("min_side must be positive");

  KdqTree tree;
  tree.params_ = params;
  tree.dims_ = reference.cols();
  tree.reference_size_ = reference.rows();

  std::vector<std::size_t> idx(reference.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<double> lower(tree.dims_, 0.0);
  std::vector<double> upper(tree.dims_, 1.0);
  tree.grow(reference, idx, 0, idx.size(), lower, upper, 0, 0);

  tree.reference_counts_ = tree.leaf_counts(reference);
  return tree;
}

std::size_t KdqTree::grow(const Matrix& reference, std::vector<std::size_t>& idx, std::size_t begin,
                          std::size_t end, std::vector<double>& lower, std::vector<double>& upper,
                          std::size_t next_dim, std::size_t depth) {
  const std::size_t node_id = nodes_.size();
  nodes_.emplace_back();
  depth_ = std::max(depth_, depth);

  std::int32_t dim = -1;
  if (end - begin > params_.max_leaf_count) {
    for (std::size_t k = 0; k < dims_; ++k) {
      std::size_t d = (next_dim + k) % dims_;
      if (upper[d] - lower[d] > params_.min_side) {
        dim = static_cast<std::int32_t>(d);
        break;
      }
    }
  }
  if (dim < 0) {
    nodes_[node_id].leaf = static_cast<std::int32_t>(leaf_nodes_.size());
    leaf_nodes_.push_back(node_id);
    return node_id;
  }

  const auto d = static_cast<std::size_t>(dim);
  const double mid = 0.5 * (lower[d] + upper[d]);
  auto first = idx.begin() + static_cast<std::ptrdiff_t>(begin);
  auto last = idx.begin() + static_cast<std::ptrdiff_t>(end);
  auto cut = std::stable_partition(first, last, [&](std::size_t r) {
    return unit_clamp(reference(r, d)) < mid;
  });
  const auto split_at = static_cast<std::size_t>(cut - idx.begin());

  nodes_[node_id].split_dim = dim;
  nodes_[node_id].split = mid;

  const double saved_upper = upper[d];
  upper[d] = mid;
  auto left = grow(reference, idx, begin, split_at, lower, upper, (d + 1) % dims_, depth + 1);
  upper[d] = saved_upper;

  const double saved_lower = lower[d];
  lower[d] = mid;
  auto right = grow(reference, idx, split_at, end, lower, upper, (d + 1) % dims_, depth + 1);
  lower[d] = saved_lower;

  nodes_[node_id].left = static_cast<std::int32_t>(left);
  nodes_[node_id].right = static_cast<std::int32_t>(right);
  return node_id;
}

std::size_t KdqTree::leaf_of(std::span<const double> sample) const {
  if (sample.size() != dims_) throw DimensionError("sample dimensionality does not match the tree");
  std::size_t n = 0;
  while (nodes_[n].split_dim >= 0) {
    const Node& node = nodes_[n];
    double v = unit_clamp(sample[static_cast<std::size_t>(node.split_dim)]);
    n = static_cast<std::size_t>(v < node.split ? node.left : node.right);
  }
  return static_cast<std::size_t>(nodes_[n].leaf);
}

std::vector<std::uint32_t> KdqTree::route(const Matrix& data) const {
  if (data.cols() != dims_) throw DimensionError("data dimensionality does not match the tree");
  std::vector<std::uint32_t> out(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) out[r] = static_cast<std::uint32_t>(leaf_of(data.row(r)));
  return out;
}

std::vector<double> KdqTree::leaf_counts(const Matrix& data) const {
  if (data.cols() != dims_) throw DimensionError("data dimensionality does not match the tree");
  std::vector<double> counts(leaf_count(), 0.0);
  for (std::size_t r = 0; r < data.rows(); ++r) counts[leaf_of(data.row(r))] += 1.0;
  return counts;
}

Histogram KdqTree::reference_histogram() const { return Histogram::from_counts(reference_counts_); }

std::vector<Cell> KdqTree::leaf_cells() const {
  std::vector<Cell> cells(leaf_count());
  struct Frame {
    std::size_t node;
    Cell cell;
  };
  std::vector<Frame> stack;
  stack.push_back({0, Cell{std::vector<double>(dims_, 0.0), std::vector<double>(dims_, 1.0)}});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Node& node = nodes_[f.node];
    if (node.split_dim < 0) {
      cells[static_cast<std::size_t>(node.leaf)] = std::move(f.cell);
      continue;
    }
    const auto d = static_cast<std::size_t>(node.split_dim);
    Cell left = f.cell;
    left.upper[d] = node.split;
    Cell right = std::move(f.cell);
    right.lower[d] = node.split;
    stack.push_back({static_cast<std::size_t>(node.left), std::move(left)});
    stack.push_back({static_cast<std::size_t>(node.right), std::move(right)});
  }
  return cells;
}

Histogram histogram_of(const KdqTree& tree, const Matrix& data) {
  if (data.rows() == 0) throw EmptyInputError("cannot build a histogram of no samples");
  return Histogram::from_counts(tree.leaf_counts(data));
}

std::vector<CriticalRegion> bootstrap_critical(const KdqTree& tree, const Matrix& reference,
                                               std::size_t batch_size,
                                               std::span<const MetricKind> kinds,
                                               std::size_t replicates, std::uint64_t seed) {
  if (replicates == 0) throw ParameterError("bootstrap needs at least one replicate");
  if (batch_size == 0) throw ParameterError("bootstrap batch size must be positive");
  if (reference.rows() == 0) throw EmptyInputError("bootstrap reference is empty");

  const auto leaves = tree.route(reference);
  const double eps = smoothing_epsilon(tree.reference_size());
  const Histogram ref_hist = smooth(histogram_of(tree, reference), eps);

  std::vector<CriticalRegion> out(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    out[k].kind = kinds[k];
    out[k].replicates = replicates;
    out[k].replicate_distances.reserve(replicates);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
  std::vector<double> counts(tree.leaf_count());
  for (std::size_t b = 0; b < replicates; ++b) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (std::size_t s = 0; s < batch_size; ++s) counts[leaves[pick(rng)]] += 1.0;
    const Histogram rep = smooth(Histogram::from_counts(counts), eps);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      out[k].replicate_distances.push_back(distance(kinds[k], ref_hist, rep));
    }
  }
  for (auto& region : out) {
    region.critical_value = *std::max_element(region.replicate_distances.begin(),
                                              region.replicate_distances.end());
  }
  return out;
}

CriticalRegion bootstrap_critical(const KdqTree& tree, const Matrix& reference,
                                  std::size_t batch_size, MetricKind kind,
                                  std::size_t replicates, std::uint64_t seed) {
  const MetricKind kinds[] = {kind};
  return std::move(bootstrap_critical(tree, reference, batch_size, kinds, replicates, seed).front());
}

}  // namespace driftbench
