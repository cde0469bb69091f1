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

#include "driftbench/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "driftbench/error.hpp"

namespace driftbench {

namespace {

void check_same_layout(const Histogram& p, const Histogram& q) {
  if (p.size() != q.size()) throw DimensionError("histograms have different bin counts");
  if (p.size() == 0) throw DegenerateInputError("empty histogram");
}

bool all_zero(const Histogram& h) {
  return std::all_of(h.masses().begin(), h.masses().end(), [](double m) { return m == 0.0; });
}

double kulsinski(const Histogram& p, const Histogram& q) {
  double a = 0.0, b = 0.0, c = 0.0, s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    a += std::min(p[i], q[i]);
    b += std::max(p[i] - q[i], 0.0);
    c += std::max(q[i] - p[i], 0.0);
    s += std::max(p[i], q[i]);
  }
  return (b + c - a + s) / (b + c + s);
}

double cosine(const Histogram& p, const Histogram& q) {
  double dot = 0.0, pp = 0.0, qq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dot += p[i] * q[i];
    pp += p[i] * p[i];
    qq += q[i] * q[i];
  }
  double sim = dot / (std::sqrt(pp) * std::sqrt(qq));
  return std::clamp(1.0 - sim, 0.0, 1.0);
}

double bhattacharyya(const Histogram& p, const Histogram& q) {
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) bc += std::sqrt(p[i] * q[i]);
  if (bc <= 0.0) return std::numeric_limits<double>::infinity();
  // Rounding can push the coefficient a hair above one for identical inputs.
  return std::max(0.0, -std::log(std::min(bc, 1.0)));
}

}  // namespace

Histogram Histogram::from_counts(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DegenerateInputError("histogram mass must be finite and non-negative");
    total += c;
  }
  if (total <= 0.0) throw DegenerateInputError("all-zero histogram");
  std::vector<double> masses(counts.begin(), counts.end());
  for (double& m : masses) m /= total;
  return Histogram(std::move(masses));
}

Histogram Histogram::from_masses(std::vector<double> masses) {
  for (double m : masses) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DegenerateInputError("histogram mass must be finite and non-negative");
  }
  return Histogram(std::move(masses));
}

Histogram smooth(const Histogram& h, double epsilon) {
  if (epsilon < 0.0) throw ParameterError("smoothing epsilon must be non-negative");
  std::vector<double> masses(h.masses().begin(), h.masses().end());
  for (double& m : masses) m += epsilon;
  return Histogram::from_counts(masses);
}

double smoothing_epsilon(std::size_t reference_count) {
  if (reference_count == 0) throw EmptyInputError("reference sample count is zero");
  return 1.0 / (2.0 * static_cast<double>(reference_count));
}

std::string_view to_string(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::KL: return "KL";
    case MetricKind::MH: return "MH";
    case MetricKind::CBS: return "CBS";
    case MetricKind::KLS: return "KLS";
    case MetricKind::COS: return "COS";
    case MetricKind::SE: return "SE";
    case MetricKind::BTC: return "BTC";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(std::string_view name) noexcept {
  for (MetricKind k : kAllMetrics) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double kl_divergence(const Histogram& p, const Histogram& q) {
  check_same_layout(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw DegenerateInputError("KL divergence undefined: q has an empty bin where p has mass");
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(sum, 0.0);
}

double distance(MetricKind kind, const Histogram& p, const Histogram& q) {
  check_same_layout(p, q);
  if (all_zero(p) || all_zero(q)) throw DegenerateInputError("all-zero histogram");
  switch (kind) {
    case MetricKind::KL:
      return kl_divergence(p, q);
    case MetricKind::MH: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
      return s;
    }
    case MetricKind::CBS: {
      double m = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i] - q[i]));
      return m;
    }
    case MetricKind::SE: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
      return s;
    }
    case MetricKind::COS:
      return cosine(p, q);
    case MetricKind::BTC:
      return bhattacharyya(p, q);
    case MetricKind::KLS:
      return kulsinski(p, q);
  }
  throw ParameterError("unknown metric kind");
}

}  // namespace driftbench
