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

// Label-dependent detectors. They consume the per-sample error bits of a
// classifier fitted on reference data and are never reset during an
// experiment; each instance is single-threaded.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "driftbench/classifiers.hpp"
#include "driftbench/decision.hpp"
#include "driftbench/matrix.hpp"

namespace driftbench {

class ErrorStreamDetector {
 public:
  virtual ~ErrorStreamDetector() = default;

  /// Ingests one error bit (true = misclassified) and returns the state
  /// after it.
  virtual DriftDecision update(bool error) = 0;

  [[nodiscard]] virtual DriftDecision state() const noexcept = 0;
  [[nodiscard]] virtual std::string_view name() const noexcept = 0;
  [[nodiscard]] virtual std::unique_ptr<ErrorStreamDetector> clone() const = 0;
  [[nodiscard]] virtual std::size_t samples_seen() const noexcept = 0;
};

enum class ErbKind { DDM, EDDM, ADWIN, HDDM_A, HDDM_W };

inline constexpr ErbKind kAllErbKinds[] = {ErbKind::DDM, ErbKind::EDDM, ErbKind::ADWIN, ErbKind::HDDM_A,
                                           ErbKind::HDDM_W};

std::string_view to_string(ErbKind kind) noexcept;
std::optional<ErbKind> parse_erb(std::string_view name) noexcept;

// ------------------------------------------------------------------ DDM

struct DdmParams {
  std::size_t min_samples = 30;
  double warning_level = 2.0;
  double drift_level = 3.0;
};

/// Tracks p_i (error rate) and s_i = sqrt(p_i (1 - p_i) / i), remembers the
/// (p, s) pair with the smallest p + s, and compares the current p + s with
/// p_min + level * s_min.
class Ddm final : public ErrorStreamDetector {
 public:
  explicit Ddm(DdmParams params = {}) : params_(params) {}

  DriftDecision update(bool error) override;
  [[nodiscard]] DriftDecision state() const noexcept override { return state_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "DDM"; }
  [[nodiscard]] std::unique_ptr<ErrorStreamDetector> clone() const override { return std::make_unique<Ddm>(*this); }
  [[nodiscard]] std::size_t samples_seen() const noexcept override { return n_; }

  [[nodiscard]] double p_min() const noexcept { return p_min_; }
  [[nodiscard]] double s_min() const noexcept { return s_min_; }

 private:
  DdmParams params_;
  std::size_t n_ = 0;
  std::size_t errors_ = 0;
  double p_min_ = std::numeric_limits<double>::infinity();
  double s_min_ = std::numeric_limits<double>::infinity();
  DriftDecision state_ = DriftDecision::no_drift;
};

// ------------------------------------------------------------------ EDDM

struct EddmParams {
  std::size_t min_errors = 30;
  double warning_ratio = 0.95;
  double drift_ratio = 0.90;
};

/// Monitors the mean p' and standard deviation s' of the distance between
/// consecutive errors; signals when (p' + 2s') falls below a fraction of its
/// running maximum.
class Eddm final : public ErrorStreamDetector {
 public:
  explicit Eddm(EddmParams params = {}) : params_(params) {}

  DriftDecision update(bool error) override;
  [[nodiscard]] DriftDecision state() const noexcept override { return state_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "EDDM"; }
  [[nodiscard]] std::unique_ptr<ErrorStreamDetector> clone() const override { return std::make_unique<Eddm>(*this); }
  [[nodiscard]] std::size_t samples_seen() const noexcept override { return n_; }
  [[nodiscard]] std::size_t errors_seen() const noexcept { return errors_; }

 private:
  EddmParams params_;
  std::size_t n_ = 0;
  std::size_t errors_ = 0;
  std::size_t last_error_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double max_m2s_ = 0.0;
  DriftDecision state_ = DriftDecision::no_drift;
};

// ------------------------------------------------------------------ ADWIN

struct AdwinParams {
  double delta = 0.002;
  std::size_t max_buckets = 5;  // M, buckets per row
};

/// Adaptive windowing over an exponential histogram. After every insert all
/// bucket boundaries are tested; while some split has
/// |mean_old - mean_new| >= sqrt(ln(4 W / delta) / (2 m)), m = 1/(1/n0 + 1/n1),
/// the oldest bucket is dropped. Any shrink is a drift.
class Adwin final : public ErrorStreamDetector {
 public:
  explicit Adwin(AdwinParams params = {});

  DriftDecision update(bool error) override;
  /// Generic insert for values in [0,1]; returns true when the window shrank.
  bool insert(double value);

  [[nodiscard]] DriftDecision state() const noexcept override { return state_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "ADWIN"; }
  [[nodiscard]] std::unique_ptr<ErrorStreamDetector> clone() const override { return std::make_unique<Adwin>(*this); }
  [[nodiscard]] std::size_t samples_seen() const noexcept override { return seen_; }

  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] double sum() const noexcept { return total_; }
  [[nodiscard]] double mean() const noexcept { return width_ == 0 ? 0.0 : total_ / static_cast<double>(width_); }
  [[nodiscard]] std::size_t bucket_count() const noexcept;
  /// Bucket sizes from oldest to newest.
  [[nodiscard]] std::vector<std::size_t> bucket_sizes() const;

 private:
  void compress();
  bool find_cut() const;
  void drop_oldest();

  AdwinParams params_;
  // rows_[r] holds sums of buckets of 2^r samples, newest at the front.
  std::vector<std::deque<double>> rows_;
  std::size_t width_ = 0;
  double total_ = 0.0;
  std::size_t seen_ = 0;
  DriftDecision state_ = DriftDecision::no_drift;
};

// ------------------------------------------------------------------ HDDM

struct HddmParams {
  double warning_confidence = 0.005;
  double drift_confidence = 0.001;
  double lambda = 0.05;  // HDDM_W only
};

/// HDDM_A: compares the overall mean against the mean of the prefix ending
/// at the running minimum using Hoeffding bounds; increases only.
class HddmA final : public ErrorStreamDetector {
 public:
  explicit HddmA(HddmParams params = {}) : params_(params) {}

  DriftDecision update(bool error) override;
  [[nodiscard]] DriftDecision state() const noexcept override { return state_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "HDDM_A"; }
  [[nodiscard]] std::unique_ptr<ErrorStreamDetector> clone() const override { return std::make_unique<HddmA>(*this); }
  [[nodiscard]] std::size_t samples_seen() const noexcept override { return n_; }

 private:
  [[nodiscard]] bool mean_increased(double confidence) const;

  HddmParams params_;
  std::size_t n_ = 0;
  double c_ = 0.0;
  std::size_t n_min_ = 0;
  double c_min_ = 0.0;
  DriftDecision state_ = DriftDecision::no_drift;
};

/// HDDM_W: EWMA statistics compared through McDiarmid's bound; increases only.
class HddmW final : public ErrorStreamDetector {
 public:
  explicit HddmW(HddmParams params = {}) : params_(params) {}

  DriftDecision update(bool error) override;
  [[nodiscard]] DriftDecision state() const noexcept override { return state_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "HDDM_W"; }
  [[nodiscard]] std::unique_ptr<ErrorStreamDetector> clone() const override { return std::make_unique<HddmW>(*this); }
  [[nodiscard]] std::size_t samples_seen() const noexcept override { return n_; }

 private:
  struct Ewma {
    double estimate = -1.0;  // negative = empty
    double bound_sum = 0.0;  // sum of squared weights
    void add(double value, double lambda);
  };
  [[nodiscard]] bool mean_increased(double confidence) const;

  HddmParams params_;
  std::size_t n_ = 0;
  Ewma total_;
  Ewma cut_sample_;
  Ewma recent_;
  double cut_point_ = -1.0;  // negative = unset
  DriftDecision state_ = DriftDecision::no_drift;
};

std::unique_ptr<ErrorStreamDetector> make_erb_detector(ErbKind kind);

/// Feeds the error bits in order; returns the dominant state seen.
DriftDecision feed_errors(ErrorStreamDetector& detector, std::span<const std::uint8_t> errors);

/// Per-sample error bits of `classifier` on a labeled batch.
std::vector<std::uint8_t> error_bits(const Classifier& classifier, const Matrix& batch,
                                     std::span<const int> labels);

/// Predicts each sample, feeds the error bit, and coarsens to one verdict:
/// drift if any update returned drift, else warning if any warning.
DriftDecision evaluate_batch(ErrorStreamDetector& detector, const Classifier& classifier,
                             const Matrix& batch, std::span<const int> labels);

}  // namespace driftbench
