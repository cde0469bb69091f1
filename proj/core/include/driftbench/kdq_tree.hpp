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
#include <vector>

#include "driftbench/matrix.hpp"
#include "driftbench/similarity.hpp"

namespace driftbench {

struct KdqParams {
  std::size_t max_leaf_count = 50;       // kappa
  double min_side = 1.0 / 1024.0;        // delta
  friend bool operator==(const KdqParams&, const KdqParams&) = default;
};

/// Axis-aligned cell of a leaf, for diagnostics and tiling checks.
struct Cell {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// kdq-tree partition of [0,1]^d built from reference data. Splits halve the
/// current cell at its midpoint, cycling through dimensions, until a cell
/// holds at most max_leaf_count points or every side is at most min_side.
/// Immutable after build; safe to share across threads.
class KdqTree {
 public:
  static KdqTree build(const Matrix& reference, KdqParams params = {});

  [[nodiscard]] std::size_t dimensions() const noexcept { return dims_; }
  [[nodiscard]] std::size_t leaf_count() const noexcept { return leaf_nodes_.size(); }
  [[nodiscard]] std::size_t reference_size() const noexcept { return reference_size_; }
  [[nodiscard]] const KdqParams& params() const noexcept { return params_; }
  [[nodiscard]] std::size_t depth() const noexcept { return depth_; }

  /// Leaf index (in enumeration order) of a single sample; values are
  /// clamped into [0,1] before routing.
  [[nodiscard]] std::size_t leaf_of(std::span<const double> sample) const;

  /// Per-leaf sample counts of `data`.
  [[nodiscard]] std::vector<double> leaf_counts(const Matrix& data) const;
  /// Leaf index of every row of `data`.
  [[nodiscard]] std::vector<std::uint32_t> route(const Matrix& data) const;

  /// Leaf counts of the reference data the tree was built from.
  [[nodiscard]] std::span<const double> reference_counts() const noexcept { return reference_counts_; }
  [[nodiscard]] Histogram reference_histogram() const;

  [[nodiscard]] std::vector<Cell> leaf_cells() const;

  friend bool operator==(const KdqTree&, const KdqTree&) = default;

 private:
  struct Node {
    std::int32_t split_dim = -1;  // -1 marks a leaf
    double split = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t leaf = -1;
    friend bool operator==(const Node&, const Node&) = default;
  };

  std::size_t grow(const Matrix& reference, std::vector<std::size_t>& idx, std::size_t begin,
                   std::size_t end, std::vector<double>& lower, std::vector<double>& upper,
                   std::size_t next_dim, std::size_t depth);

  KdqParams params_;
  std::size_t dims_ = 0;
  std::size_t reference_size_ = 0;
  std::size_t depth_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::size_t> leaf_nodes_;
  std::vector<double> reference_counts_;
};

/// Normalized leaf-count histogram of `data` (unsmoothed).
Histogram histogram_of(const KdqTree& tree, const Matrix& data);

struct CriticalRegion {
  MetricKind kind = MetricKind::KL;
  double critical_value = 0.0;
  std::size_t replicates = 0;
  std::vector<double> replicate_distances;
};

/// Bootstraps the largest discrepancy between the reference histogram and
/// histograms of `batch_size`-sample resamples (with replacement) of the
/// reference. Both histograms are smoothed with smoothing_epsilon(N_ref)
/// before the distance is taken. Deterministic in `seed`; replicate i is
/// the same for any replicate count > i.
CriticalRegion bootstrap_critical(const KdqTree& tree, const Matrix& reference,
                                  std::size_t batch_size, MetricKind kind,
                                  std::size_t replicates, std::uint64_t seed);

/// Same bootstrap for several metrics at once, sharing the resamples.
std::vector<CriticalRegion> bootstrap_critical(const KdqTree& tree, const Matrix& reference,
                                               std::size_t batch_size,
                                               std::span<const MetricKind> kinds,
                                               std::size_t replicates, std::uint64_t seed);

}  // namespace driftbench
