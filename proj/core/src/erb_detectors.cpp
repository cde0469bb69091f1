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

#include "driftbench/erb_detectors.hpp"

#include <cmath>

#include "driftbench/error.hpp"

namespace driftbench {

std::string_view to_string(ErbKind kind) noexcept {
  switch (kind) {
    case ErbKind::DDM: return "DDM";
    case ErbKind::EDDM: return "EDDM";
    case ErbKind::ADWIN: return "ADWIN";
    case ErbKind::HDDM_A: return "HDDM_A";
    case ErbKind::HDDM_W: return "HDDM_W";
  }
  return "?";
}

std::optional<ErbKind> parse_erb(std::string_view name) noexcept {
  for (ErbKind k : kAllErbKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ DDM

DriftDecision Ddm::update(bool error) {
  ++n_;
  errors_ += error ? 1 : 0;
  const double n = static_cast<double>(n_);
  const double p = static_cast<double>(errors_) / n;
  const double s = std::sqrt(p * (1.0 - p) / n);

  if (n_ < params_.min_samples) {
    state_ = DriftDecision::no_drift;
    return state_;
  }
  if (p + s <= p_min_ + s_min_) {
    p_min_ = p;
    s_min_ = s;
  }
  // Strict comparisons: with p_min = s_min = 0 (an error-free warm-up) an
  // error-free prefix must not count as drift.
  if (p + s > p_min_ + params_.drift_level * s_min_) {
    state_ = DriftDecision::drift;
  } else if (p + s > p_min_ + params_.warning_level * s_min_) {
    state_ = DriftDecision::warning;
  } else {
    state_ = DriftDecision::no_drift;
  }
  return state_;
}

// ------------------------------------------------------------------ EDDM

DriftDecision Eddm::update(bool error) {
  ++n_;
  if (!error) return state_;

  ++errors_;
  const double distance = static_cast<double>(n_ - last_error_);
  last_error_ = n_;
  const double count = static_cast<double>(errors_);
  const double old_mean = mean_;
  mean_ += (distance - mean_) / count;
  m2_ += (distance - mean_) * (distance - old_mean);
  const double m2s = mean_ + 2.0 * std::sqrt(m2_ / count);

  if (errors_ < params_.min_errors) {
    state_ = DriftDecision::no_drift;
    return state_;
  }
  if (m2s > max_m2s_) {
    max_m2s_ = m2s;
    state_ = DriftDecision::no_drift;
    return state_;
  }
  const double ratio = m2s / max_m2s_;
  if (ratio < params_.drift_ratio) {
    state_ = DriftDecision::drift;
  } else if (ratio < params_.warning_ratio) {
    state_ = DriftDecision::warning;
  } else {
    state_ = DriftDecision::no_drift;
  }
  return state_;
}

// ------------------------------------------------------------------ ADWIN

Adwin::Adwin(AdwinParams params) : params_(params) {
  if (!(params_.delta > 0.0 && params_.delta < 1.0)) throw ParameterError("ADWIN delta must lie in (0, 1)");
  if (params_.max_buckets < 2) throw ParameterError("ADWIN needs at least two buckets per row");
}

std::size_t Adwin::bucket_count() const noexcept {
  std::size_t c = 0;
  for (const auto& row : rows_) c += row.size();
  return c;
}

std::vector<std::size_t> Adwin::bucket_sizes() const {
  std::vector<std::size_t> sizes;
  for (std::size_t r = rows_.size(); r-- > 0;) {
    for (std::size_t b = rows_[r].size(); b-- > 0;) sizes.push_back(std::size_t{1} << r);
  }
  return sizes;
}

void Adwin::compress() {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() <= params_.max_buckets) break;
    // Merge the two oldest buckets of this row into the newest slot of the next.
    const double merged = rows_[r][rows_[r].size() - 1] + rows_[r][rows_[r].size() - 2];
    rows_[r].pop_back();
    rows_[r].pop_back();
    if (r + 1 == rows_.size()) rows_.emplace_back();
    rows_[r + 1].push_front(merged);
  }
}

bool Adwin::find_cut() const {
  if (width_ < 2) return false;
  const double w = static_cast<double>(width_);
  const double log_term = std::log(4.0 * w / params_.delta);
  double n0 = 0.0, s0 = 0.0;
  // Walk buckets oldest to newest; each boundary splits old | new.
  for (std::size_t r = rows_.size(); r-- > 0;) {
    const double size = static_cast<double>(std::size_t{1} << r);
    for (std::size_t b = rows_[r].size(); b-- > 0;) {
      n0 += size;
      s0 += rows_[r][b];
      const double n1 = w - n0;
      if (n1 <= 0.0) return false;
      const double s1 = total_ - s0;
      const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
      const double eps = std::sqrt(log_term / (2.0 * m));
      if (std::abs(s0 / n0 - s1 / n1) >= eps) return true;
    }
  }
  return false;
}

void Adwin::drop_oldest() {
  for (std::size_t r = rows_.size(); r-- > 0;) {
    if (rows_[r].empty()) continue;
    total_ -= rows_[r].back();
    width_ -= std::size_t{1} << r;
    rows_[r].pop_back();
    break;
  }
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

bool Adwin::insert(double value) {
  ++seen_;
  if (rows_.empty()) rows_.emplace_back();
  rows_[0].push_front(value);
  ++width_;
  total_ += value;
  compress();

  bool shrunk = false;
  while (find_cut()) {
    drop_oldest();
    shrunk = true;
  }
  return shrunk;
}

DriftDecision Adwin::update(bool error) {
  state_ = insert(error ? 1.0 : 0.0) ? DriftDecision::drift : DriftDecision::no_drift;
  return state_;
}

// ------------------------------------------------------------------ HDDM_A

bool HddmA::mean_increased(double confidence) const {
  if (n_min_ == n_) return false;
  const double n = static_cast<double>(n_);
  const double nm = static_cast<double>(n_min_);
  const double m = (n - nm) / (nm * n);
  const double bound = std::sqrt(m / 2.0 * std::log(1.0 / confidence));
  return c_ / n - c_min_ / nm >= bound;
}

DriftDecision HddmA::update(bool error) {
  ++n_;
  c_ += error ? 1.0 : 0.0;
  if (n_min_ == 0) {
    n_min_ = n_;
    c_min_ = c_;
  }
  const double log_term = std::log(1.0 / params_.drift_confidence);
  const double bound_min = std::sqrt(log_term / (2.0 * static_cast<double>(n_min_)));
  const double bound_now = std::sqrt(log_term / (2.0 * static_cast<double>(n_)));
  if (c_min_ / static_cast<double>(n_min_) + bound_min >= c_ / static_cast<double>(n_) + bound_now) {
    n_min_ = n_;
    c_min_ = c_;
  }
  if (mean_increased(params_.drift_confidence)) {
    state_ = DriftDecision::drift;
  } else if (mean_increased(params_.warning_confidence)) {
    state_ = DriftDecision::warning;
  } else {
    state_ = DriftDecision::no_drift;
  }
  return state_;
}

// ------------------------------------------------------------------ HDDM_W

void HddmW::Ewma::add(double value, double lambda) {
  if (estimate < 0.0) {
    estimate = value;
    bound_sum = 1.0;
    return;
  }
  const double keep = 1.0 - lambda;
  estimate = lambda * value + keep * estimate;
  bound_sum = lambda * lambda + keep * keep * bound_sum;
}

bool HddmW::mean_increased(double confidence) const {
  if (cut_sample_.estimate < 0.0 || recent_.estimate < 0.0) return false;
  const double bound =
      std::sqrt((cut_sample_.bound_sum + recent_.bound_sum) * std::log(1.0 / confidence) / 2.0);
  return recent_.estimate - cut_sample_.estimate > bound;
}

DriftDecision HddmW::update(bool error) {
  ++n_;
  const double value = error ? 1.0 : 0.0;
  total_.add(value, params_.lambda);

  const double eps = std::sqrt(total_.bound_sum * std::log(1.0 / params_.drift_confidence) / 2.0);
  if (cut_point_ < 0.0 || total_.estimate + eps < cut_point_) {
    cut_point_ = total_.estimate + eps;
    cut_sample_ = total_;
    recent_ = Ewma{};
  } else {
    recent_.add(value, params_.lambda);
  }

  if (mean_increased(params_.drift_confidence)) {
    state_ = DriftDecision::drift;
  } else if (mean_increased(params_.warning_confidence)) {
    state_ = DriftDecision::warning;
  } else {
    state_ = DriftDecision::no_drift;
  }
  return state_;
}

// ------------------------------------------------------------------ helpers

std::unique_ptr<ErrorStreamDetector> make_erb_detector(ErbKind kind) {
  switch (kind) {
    case ErbKind::DDM: return std::make_unique<Ddm>();
    case ErbKind::EDDM: return std::make_unique<Eddm>();
    case ErbKind::ADWIN: return std::make_unique<Adwin>();
    case ErbKind::HDDM_A: return std::make_unique<HddmA>();
    case ErbKind::HDDM_W: return std::make_unique<HddmW>();
  }
  throw ParameterError("unknown ERB detector kind");
}

DriftDecision feed_errors(ErrorStreamDetector& detector, std::span<const std::uint8_t> errors) {
  DriftDecision verdict = DriftDecision::no_drift;
  for (auto e : errors) verdict = dominant(verdict, detector.update(e != 0));
  return verdict;
}

std::vector<std::uint8_t> error_bits(const Classifier& classifier, const Matrix& batch,
                                     std::span<const int> labels) {
  if (batch.rows() != labels.size()) throw DimensionError("label count does not match batch size");
  const auto predicted = classifier.predict(batch);
  std::vector<std::uint8_t> bits(predicted.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = predicted[i] != labels[i] ? 1 : 0;
  return bits;
}

DriftDecision evaluate_batch(ErrorStreamDetector& detector, const Classifier& classifier,
                             const Matrix& batch, std::span<const int> labels) {
  return feed_errors(detector, error_bits(classifier, batch, labels));
}

}  // namespace driftbench
