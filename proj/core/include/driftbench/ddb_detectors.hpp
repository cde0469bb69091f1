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

// Label-independent detectors. Each is fitted once on the (scaled)
// reference matrix and then judges test batches without changing state, so
// a fitted detector may be shared across threads.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "driftbench/decision.hpp"
#include "driftbench/kdq_tree.hpp"
#include "driftbench/matrix.hpp"
#include "driftbench/pca.hpp"
#include "driftbench/scaler.hpp"
#include "driftbench/similarity.hpp"

namespace driftbench {

class DistributionDetector {
 public:
  virtual ~DistributionDetector() = default;
  [[nodiscard]] virtual DriftDecision decide(const Matrix& batch) const = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

enum class TwoSampleTestKind { KS, MW };
std::string_view to_string(TwoSampleTestKind kind) noexcept;
std::optional<TwoSampleTestKind> parse_test(std::string_view name) noexcept;

struct EdeEvaluation {
  std::vector<double> p_values;  // one per feature
  double min_p = 1.0;
  double threshold = 0.0;        // alpha / d
  DriftDecision decision = DriftDecision::no_drift;
};

/// Per-feature two-sample tests against the reference, combined with a
/// Bonferroni correction: drift iff min_j p_j < alpha / d.
class EdeDetector final : public DistributionDetector {
 public:
  static EdeDetector fit(const Matrix& reference, TwoSampleTestKind test, double alpha = 0.05);

  [[nodiscard]] EdeEvaluation evaluate(const Matrix& batch) const;
  [[nodiscard]] DriftDecision decide(const Matrix& batch) const override { return evaluate(batch).decision; }
  [[nodiscard]] std::string name() const override;

  [[nodiscard]] TwoSampleTestKind test() const noexcept { return test_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }

 private:
  TwoSampleTestKind test_ = TwoSampleTestKind::KS;
  double alpha_ = 0.05;
  std::vector<std::vector<double>> sorted_columns_;
};

struct KdqDetectorParams {
  KdqParams tree{};
  std::size_t replicates = 500;
  std::size_t batch_size = 5000;
  std::uint64_t seed = 0;
};

/// kdqTrees: drift iff distance(reference histogram, batch histogram)
/// exceeds the bootstrapped critical value.
class KdqDetector final : public DistributionDetector {
 public:
  static KdqDetector fit(const Matrix& reference, MetricKind kind, const KdqDetectorParams& params);
  /// Builds one detector per metric, sharing the tree and the resamples.
  static std::vector<KdqDetector> fit_all(const Matrix& reference, std::span<const MetricKind> kinds,
                                          const KdqDetectorParams& params);

  [[nodiscard]] double score(const Matrix& batch) const;
  [[nodiscard]] DriftDecision decide(const Matrix& batch) const override;
  [[nodiscard]] std::string name() const override;

  [[nodiscard]] MetricKind metric() const noexcept { return kind_; }
  [[nodiscard]] const KdqTree& tree() const noexcept { return *tree_; }
  [[nodiscard]] const CriticalRegion& critical() const noexcept { return critical_; }

 private:
  MetricKind kind_ = MetricKind::KL;
  std::shared_ptr<const KdqTree> tree_;
  Histogram reference_hist_;  // smoothed
  double epsilon_ = 0.0;
  CriticalRegion critical_;
};

struct PcaKdqParams {
  KdqDetectorParams kdq{};
  double retained_fraction = 0.95;
};

/// PCA-kdq: kdqTrees on PCA-projected features. The projection is re-scaled
/// into [0,1] with a min-max scaler fit on the projected reference.
class PcaKdqDetector final : public DistributionDetector {
 public:
  static PcaKdqDetector fit(const Matrix& reference, MetricKind kind, const PcaKdqParams& params);
  static std::vector<PcaKdqDetector> fit_all(const Matrix& reference, std::span<const MetricKind> kinds,
                                             const PcaKdqParams& params);

  [[nodiscard]] double score(const Matrix& batch) const;
  [[nodiscard]] DriftDecision decide(const Matrix& batch) const override;
  [[nodiscard]] std::string name() const override;

  [[nodiscard]] const PcaModel& pca() const noexcept { return *pca_; }
  [[nodiscard]] const KdqDetector& inner() const noexcept { return inner_; }
  [[nodiscard]] Matrix project(const Matrix& batch) const;

 private:
  std::shared_ptr<const PcaModel> pca_;
  std::shared_ptr<const MinMaxScaler> scaler_;
  KdqDetector inner_;
};

}  // namespace driftbench
