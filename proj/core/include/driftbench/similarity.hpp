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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace driftbench {

/// Discrete probability distribution over an ordered set of bins. Bins are
/// aligned with a kdq-tree leaf enumeration when produced by KdqTree.
class Histogram {
 public:
  Histogram() = default;

  /// Normalizes non-negative masses (counts or weights) to sum to one.
  /// Throws DegenerateInputError on negative, non-finite or all-zero input.
  static Histogram from_counts(std::span<const double> counts);

  /// Wraps masses that are already normalized; only non-negativity is checked.
  static Histogram from_masses(std::vector<double> masses);

  [[nodiscard]] std::size_t size() const noexcept { return masses_.size(); }
  [[nodiscard]] std::span<const double> masses() const noexcept { return masses_; }
  double operator[](std::size_t i) const { return masses_[i]; }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  explicit Histogram(std::vector<double> masses) : masses_(std::move(masses)) {}
  std::vector<double> masses_;
};

/// Adds `epsilon` to every bin and renormalizes. The detectors use
/// epsilon = 1 / (2 * reference sample count) so no bin is ever empty.
Histogram smooth(const Histogram& h, double epsilon);

/// The smoothing constant used for a reference of `reference_count` samples.
double smoothing_epsilon(std::size_t reference_count);

enum class MetricKind { KL, MH, CBS, KLS, COS, SE, BTC };

inline constexpr std::array<MetricKind, 7> kAllMetrics = {
    MetricKind::KL, MetricKind::MH, MetricKind::CBS, MetricKind::KLS,
    MetricKind::COS, MetricKind::SE, MetricKind::BTC};

std::string_view to_string(MetricKind kind) noexcept;
std::optional<MetricKind> parse_metric(std::string_view name) noexcept;

/// sum_i p_i ln(p_i / q_i), with 0 ln(0/q) = 0. A bin with p_i > 0 and
/// q_i = 0 is a DegenerateInputError: callers smooth q first.
double kl_divergence(const Histogram& p, const Histogram& q);

/// Dissimilarity of two histograms with identical bin layout.
///   MH  = sum |p - q|            CBS = max |p - q|
///   SE  = sum (p - q)^2          COS = 1 - p.q / (|p| |q|)
///   BTC = -ln sum sqrt(p q)      KL  = kl_divergence(p, q)
///   KLS = (b + c - a + S) / (b + c + S) with a = sum min(p, q),
///         b = sum (p - q)+, c = sum (q - p)+, S = sum max(p, q)
double distance(MetricKind kind, const Histogram& p, const Histogram& q);

}  // namespace driftbench
