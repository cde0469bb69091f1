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

#include "driftbench/ddb_detectors.hpp"

#include <algorithm>

#include "driftbench/error.hpp"
#include "driftbench/stat_tests.hpp"

namespace driftbench {

std::string_view to_string(TwoSampleTestKind kind) noexcept {
  return kind == TwoSampleTestKind::KS ? "KS" : "MW";
}

std::optional<TwoSampleTestKind> parse_test(std::string_view name) noexcept {
  if (name == "KS") return TwoSampleTestKind::KS;
  if (name == "MW") return TwoSampleTestKind::MW;
  return std::nullopt;
}

// ---------------------------------------------------------------- EDE

EdeDetector EdeDetector::fit(const Matrix& reference, TwoSampleTestKind test, double alpha) {
  if (reference.rows() == 0) throw EmptyInputError("EDE reference is empty");
  if (reference.cols() == 0) throw DimensionError("EDE needs at least one feature");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("EDE significance must lie in (0, 1)");
  EdeDetector det;
  det.test_ = test;
  det.alpha_ = alpha;
  det.sorted_columns_.reserve(reference.cols());
  for (std::size_t c = 0; c < reference.cols(); ++c) {
    auto col = reference.column(c);
    std::sort(col.begin(), col.end());
    det.sorted_columns_.push_back(std::move(col));
  }
  return det;
}

EdeEvaluation EdeDetector::evaluate(const Matrix& batch) const {
  if (batch.cols() != sorted_columns_.size()) throw DimensionError("EDE batch dimensionality mismatch");
  if (batch.rows() < 3) throw InsufficientDataError("EDE needs at least 3 samples per batch");
  EdeEvaluation ev;
  ev.threshold = alpha_ / static_cast<double>(sorted_columns_.size());
  ev.p_values.reserve(sorted_columns_.size());
  for (std::size_t c = 0; c < sorted_columns_.size(); ++c) {
    auto col = batch.column(c);
    std::sort(col.begin(), col.end());
    const auto r = test_ == TwoSampleTestKind::KS ? ks_test_sorted(sorted_columns_[c], col)
                                                  : mann_whitney_test_sorted(sorted_columns_[c], col);
    ev.p_values.push_back(r.p_value);
    ev.min_p = std::min(ev.min_p, r.p_value);
  }
  ev.decision = ev.min_p < ev.threshold ? DriftDecision::drift : DriftDecision::no_drift;
  return ev;
}

std::string EdeDetector::name() const { return "EDE-" + std::string(to_string(test_)); }

// ---------------------------------------------------------------- kdqTrees

std::vector<KdqDetector> KdqDetector::fit_all(const Matrix& reference, std::span<const MetricKind> kinds,
                                              const KdqDetectorParams& params) {
  auto tree = std::make_shared<const KdqTree>(KdqTree::build(reference, params.tree));
  auto regions = bootstrap_critical(*tree, reference, params.batch_size, kinds, params.replicates, params.seed);
  const double eps = smoothing_epsilon(reference.rows());
  const Histogram ref_hist = smooth(tree->reference_histogram(), eps);

  std::vector<KdqDetector> out;
  out.reserve(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    KdqDetector det;
    det.kind_ = kinds[k];
    det.tree_ = tree;
    det.reference_hist_ = ref_hist;
    det.epsilon_ = eps;
    det.critical_ = std::move(regions[k]);
    out.push_back(std::move(det));
  }
  return out;
}

KdqDetector KdqDetector::fit(const Matrix& reference, MetricKind kind, const KdqDetectorParams& params) {
  const MetricKind kinds[] = {kind};
  return std::move(fit_all(reference, kinds, params).front());
}

double KdqDetector::score(const Matrix& batch) const {
  if (!tree_) throw UsageError("kdq detector is not fitted");
  if (batch.cols() != tree_->dimensions()) throw DimensionError("kdq batch dimensionality mismatch");
  const Histogram h = smooth(histogram_of(*tree_, batch), epsilon_);
  return distance(kind_, reference_hist_, h);
}

DriftDecision KdqDetector::decide(const Matrix& batch) const {
  return score(batch) > critical_.critical_value ? DriftDecision::drift : DriftDecision::no_drift;
}

std::string KdqDetector::name() const { return "kdqTrees-" + std::string(to_string(kind_)); }

// ---------------------------------------------------------------- PCA-kdq

std::vector<PcaKdqDetector> PcaKdqDetector::fit_all(const Matrix& reference,
                                                    std::span<const MetricKind> kinds,
                                                    const PcaKdqParams& params) {
  auto pca = std::make_shared<const PcaModel>(fit_pca(reference, params.retained_fraction));
  const Matrix projected = pca->project(reference);
  auto scaler = std::make_shared<const MinMaxScaler>(MinMaxScaler::fit(projected));
  const Matrix unit = scaler->transform(projected);
  auto inner = KdqDetector::fit_all(unit, kinds, params.kdq);

  std::vector<PcaKdqDetector> out;
  out.reserve(kinds.size());
  for (auto& det : inner) {
    PcaKdqDetector p;
    p.pca_ = pca;
    p.scaler_ = scaler;
    p.inner_ = std::move(det);
    out.push_back(std::move(p));
  }
  return out;
}

PcaKdqDetector PcaKdqDetector::fit(const Matrix& reference, MetricKind kind, const PcaKdqParams& params) {
  const MetricKind kinds[] = {kind};
  return std::move(fit_all(reference, kinds, params).front());
}

Matrix PcaKdqDetector::project(const Matrix& batch) const {
  if (!pca_) throw UsageError("PCA-kdq detector is not fitted");
  return scaler_->transform(pca_->project(batch));
}

double PcaKdqDetector::score(const Matrix& batch) const { return inner_.score(project(batch)); }

DriftDecision PcaKdqDetector::decide(const Matrix& batch) const { return inner_.decide(project(batch)); }

std::string PcaKdqDetector::name() const { return "PCA-kdq-" + std::string(to_string(inner_.metric())); }

}  // namespace driftbench
