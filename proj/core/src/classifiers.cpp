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

#include "driftbench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "driftbench/error.hpp"

namespace driftbench {

namespace {

void check_training(const Matrix& samples, std::span<const int> labels) {
  if (samples.rows() == 0) throw EmptyInputError("classifier training set is empty");
  if (samples.rows() != labels.size()) throw DimensionError("label count does not match sample count");
}

std::vector<int> distinct_labels(std::span<const int> labels) {
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw DegenerateInputError("training data must contain at least two classes");
  return classes;
}

}  // namespace

std::vector<int> Classifier::predict(const Matrix& samples) const {
  if (samples.rows() > 0 && samples.cols() != dimensions())
    throw DimensionError("sample dimensionality does not match the classifier");
  std::vector<int> out(samples.rows());
  for (std::size_t r = 0; r < samples.rows(); ++r) out[r] = predict_one(samples.row(r));
  return out;
}

double accuracy(const Classifier& classifier, const Matrix& samples, std::span<const int> labels) {
  if (samples.rows() != labels.size()) throw DimensionError("label count does not match sample count");
  if (samples.rows() == 0) return 0.0;
  const auto pred = classifier.predict(samples);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == labels[i] ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

std::string_view to_string(ClassifierKind kind) noexcept {
  return kind == ClassifierKind::NaiveBayes ? "NB" : "ADB";
}

std::optional<ClassifierKind> parse_classifier(std::string_view name) noexcept {
  if (name == "NB") return ClassifierKind::NaiveBayes;
  if (name == "ADB") return ClassifierKind::AdaBoost;
  return std::nullopt;
}

// ------------------------------------------------------------ naive Bayes

GaussianNaiveBayes GaussianNaiveBayes::fit(const Matrix& samples, std::span<const int> labels) {
  check_training(samples, labels);
  GaussianNaiveBayes nb;
  nb.dims_ = samples.cols();
  nb.classes_ = distinct_labels(labels);
  const std::size_t k = nb.classes_.size();
  const std::size_t d = nb.dims_;

  std::vector<double> counts(k, 0.0);
  nb.means_.assign(k, std::vector<double>(d, 0.0));
  nb.variances_.assign(k, std::vector<double>(d, 0.0));
  auto class_of = [&](int label) {
    return static_cast<std::size_t>(std::lower_bound(nb.classes_.begin(), nb.classes_.end(), label) -
                                    nb.classes_.begin());
  };

  for (std::size_t r = 0; r < samples.rows(); ++r) {
    const std::size_t c = class_of(labels[r]);
    counts[c] += 1.0;
    auto row = samples.row(r);
    for (std::size_t j = 0; j < d; ++j) nb.means_[c][j] += row[j];
  }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < d; ++j) nb.means_[c][j] /= counts[c];
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    const std::size_t c = class_of(labels[r]);
    auto row = samples.row(r);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = row[j] - nb.means_[c][j];
      nb.variances_[c][j] += diff * diff;
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < d; ++j) nb.variances_[c][j] /= counts[c];

  // Largest overall feature variance sets the smoothing scale.
  double max_var = 0.0;
  const double n = static_cast<double>(samples.rows());
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t r = 0; r < samples.rows(); ++r) mean += samples(r, j);
    mean /= n;
    for (std::size_t r = 0; r < samples.rows(); ++r) sq += (samples(r, j) - mean) * (samples(r, j) - mean);
    max_var = std::max(max_var, sq / n);
  }
  nb.floor_ = 1e-9 * (max_var > 0.0 ? max_var : 1.0);
  for (auto& vars : nb.variances_)
    for (double& v : vars) v += nb.floor_;

  nb.priors_.resize(k);
  for (std::size_t c = 0; c < k; ++c) nb.priors_[c] = counts[c] / n;
  return nb;
}

std::vector<double> GaussianNaiveBayes::log_joint(std::span<const double> sample) const {
  if (classes_.empty()) throw UsageError("naive Bayes classifier is not fitted");
  if (sample.size() != dims_) throw DimensionError("sample dimensionality does not match the classifier");
  std::vector<double> out(classes_.size());
  const double log_two_pi = std::log(2.0 * std::numbers::pi);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    double s = std::log(priors_[c]);
    for (std::size_t j = 0; j < dims_; ++j) {
      const double var = variances_[c][j];
      const double diff = sample[j] - means_[c][j];
      s -= 0.5 * (log_two_pi + std::log(var)) + diff * diff / (2.0 * var);
    }
    out[c] = s;
  }
  return out;
}

int GaussianNaiveBayes::predict_one(std::span<const double> sample) const {
  const auto scores = log_joint(sample);
  const auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
  return classes_[static_cast<std::size_t>(best)];
}

// ------------------------------------------------------------ AdaBoost

AdaBoostStumps AdaBoostStumps::fit(const Matrix& samples, std::span<const int> labels, std::size_t rounds) {
  check_training(samples, labels);
  if (rounds == 0) throw ParameterError("AdaBoost needs at least one round");
  const auto classes = distinct_labels(labels);
  if (classes.size() != 2) throw DegenerateInputError("AdaBoost stumps support exactly two classes");

  AdaBoostStumps model;
  model.dims_ = samples.cols();
  model.negative_ = classes[0];
  model.positive_ = classes[1];

  const std::size_t n = samples.rows();
  const std::size_t d = samples.cols();
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] == model.positive_ ? 1 : -1;

  // Sorted sample order per feature, computed once.
  std::vector<std::vector<std::size_t>> order(d, std::vector<std::size_t>(n));
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(order[j].begin(), order[j].end(), std::size_t{0});
    std::stable_sort(order[j].begin(), order[j].end(),
                     [&](std::size_t a, std::size_t b) { return samples(a, j) < samples(b, j); });
  }

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (std::size_t round = 0; round < rounds; ++round) {
    Stump best;
    double best_err = std::numeric_limits<double>::infinity();
    double w_neg_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) w_neg_total += y[i] < 0 ? w[i] : 0.0;

    for (std::size_t j = 0; j < d; ++j) {
      const auto& ord = order[j];
      // Threshold below every value: polarity +1 predicts +1 everywhere.
      double err_pos = w_neg_total;
      auto consider = [&](double threshold, double err) {
        if (err < best_err) {
          best_err = err;
          best = Stump{j, threshold, 1, 0.0};
        }
        if (1.0 - err < best_err) {
          best_err = 1.0 - err;
          best = Stump{j, threshold, -1, 0.0};
        }
      };
      consider(-std::numeric_limits<double>::infinity(), err_pos);
      std::size_t i = 0;
      while (i < n) {
        const double v = samples(ord[i], j);
        while (i < n && samples(ord[i], j) == v) {
          const std::size_t s = ord[i];
          err_pos += y[s] > 0 ? w[s] : -w[s];
          ++i;
        }
        if (i < n) consider(0.5 * (v + samples(ord[i], j)), err_pos);
      }
    }

    const double err = std::clamp(best_err, 1e-12, 1.0);
    if (err >= 0.5 && !model.stumps_.empty()) break;
    best.weight = std::log((1.0 - err) / err);
    if (!std::isfinite(best.weight)) best.weight = 0.0;
    model.stumps_.push_back(best);
    if (best_err <= 1e-12) break;

    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const int vote = samples(s, best.feature) > best.threshold ? best.polarity : -best.polarity;
      if (vote != y[s]) w[s] *= std::exp(best.weight);
      total += w[s];
    }
    for (double& wi : w) wi /= total;
  }
  return model;
}

double AdaBoostStumps::margin(std::span<const double> sample) const {
  if (stumps_.empty()) throw UsageError("AdaBoost classifier is not fitted");
  if (sample.size() != dims_) throw DimensionError("sample dimensionality does not match the classifier");
  double score = 0.0;
  for (const auto& st : stumps_) {
    score += st.weight * (sample[st.feature] > st.threshold ? st.polarity : -st.polarity);
  }
  return score;
}

int AdaBoostStumps::predict_one(std::span<const double> sample) const {
  return margin(sample) > 0.0 ? positive_ : negative_;
}

std::unique_ptr<Classifier> fit_classifier(ClassifierKind kind, const Matrix& samples,
                                           std::span<const int> labels) {
  if (kind == ClassifierKind::NaiveBayes)
    return std::make_unique<GaussianNaiveBayes>(GaussianNaiveBayes::fit(samples, labels));
  return std::make_unique<AdaBoostStumps>(AdaBoostStumps::fit(samples, labels));
}

}  // namespace driftbench
