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
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "driftbench/matrix.hpp"

namespace driftbench {

/// A classifier fitted once on reference data; prediction is const and
/// deterministic.
class Classifier {
 public:
  virtual ~Classifier() = default;

  [[nodiscard]] virtual int predict_one(std::span<const double> sample) const = 0;
  [[nodiscard]] std::vector<int> predict(const Matrix& samples) const;

  [[nodiscard]] virtual std::size_t dimensions() const noexcept = 0;
  [[nodiscard]] virtual std::string_view name() const noexcept = 0;
};

double accuracy(const Classifier& classifier, const Matrix& samples, std::span<const int> labels);

enum class ClassifierKind { NaiveBayes, AdaBoost };

std::string_view to_string(ClassifierKind kind) noexcept;  // "NB" / "ADB"
std::optional<ClassifierKind> parse_classifier(std::string_view name) noexcept;

/// Gaussian naive Bayes with maximum-likelihood class-conditional Gaussians
/// and empirical priors. Every variance is increased by
/// 1e-9 * (largest per-feature variance of the training data) so that
/// constant one-hot columns stay well defined.
class GaussianNaiveBayes final : public Classifier {
 public:
  GaussianNaiveBayes() = default;
  static GaussianNaiveBayes fit(const Matrix& samples, std::span<const int> labels);

  [[nodiscard]] int predict_one(std::span<const double> sample) const override;
  [[nodiscard]] std::vector<double> log_joint(std::span<const double> sample) const;

  [[nodiscard]] std::size_t dimensions() const noexcept override { return dims_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "NB"; }

  [[nodiscard]] const std::vector<int>& classes() const noexcept { return classes_; }
  [[nodiscard]] const std::vector<double>& priors() const noexcept { return priors_; }
  [[nodiscard]] const std::vector<std::vector<double>>& means() const noexcept { return means_; }
  [[nodiscard]] const std::vector<std::vector<double>>& variances() const noexcept { return variances_; }
  [[nodiscard]] double variance_floor() const noexcept { return floor_; }

 private:
  std::size_t dims_ = 0;
  std::vector<int> classes_;
  std::vector<double> priors_;
  std::vector<std::vector<double>> means_;
  std::vector<std::vector<double>> variances_;
  double floor_ = 0.0;
};

/// Single-feature threshold rule: votes `polarity` when x > threshold and
/// -polarity otherwise.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;
  double weight = 0.0;
};

/// Binary AdaBoost (SAMME weighting) over exhaustively searched stumps with
/// thresholds at midpoints of consecutive distinct feature values.
class AdaBoostStumps final : public Classifier {
 public:
  AdaBoostStumps() = default;
  static AdaBoostStumps fit(const Matrix& samples, std::span<const int> labels, std::size_t rounds = 50);

  [[nodiscard]] int predict_one(std::span<const double> sample) const override;
  [[nodiscard]] double margin(std::span<const double> sample) const;

  [[nodiscard]] std::size_t dimensions() const noexcept override { return dims_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "ADB"; }
  [[nodiscard]] const std::vector<Stump>& stumps() const noexcept { return stumps_; }

 private:
  std::size_t dims_ = 0;
  int negative_ = 0;
  int positive_ = 1;
  std::vector<Stump> stumps_;
};

std::unique_ptr<Classifier> fit_classifier(ClassifierKind kind, const Matrix& samples,
                                           std::span<const int> labels);

}  // namespace driftbench
