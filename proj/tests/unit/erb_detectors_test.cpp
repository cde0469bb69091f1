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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "driftbench/classifiers.hpp"
#include "driftbench/error.hpp"

namespace driftbench {
namespace {

std::vector<std::uint8_t> bernoulli(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = coin(rng) ? 1 : 0;
  return bits;
}

std::vector<std::uint8_t> concat(std::vector<std::uint8_t> a, const std::vector<std::uint8_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ADWIN without buckets: keeps every bit and tests every split point.
class NaiveAdwin {
 public:
  explicit NaiveAdwin(double delta) : delta_(delta) {}

  bool insert(double v) {
    window_.push_back(v);
    bool shrunk = false;
    while (has_cut()) {
      window_.erase(window_.begin());
      shrunk = true;
    }
    return shrunk;
  }

 private:
  bool has_cut() const {
    const std::size_t w = window_.size();
    if (w < 2) return false;
    const double total = std::accumulate(window_.begin(), window_.end(), 0.0);
    const double log_term = std::log(4.0 * static_cast<double>(w) / delta_);
    double head = 0;
    for (std::size_t k = 1; k < w; ++k) {
      head += window_[k - 1];
      const double n0 = static_cast<double>(k), n1 = static_cast<double>(w - k);
      const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
      if (std::fabs(head / n0 - (total - head) / n1) >= std::sqrt(log_term / (2.0 * m))) return true;
    }
    return false;
  }

  double delta_;
  std::vector<double> window_;
};

TEST(Adwin, ZerosNeverDrift) {
  Adwin a;
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.update(false), DriftDecision::no_drift);
  EXPECT_EQ(a.width(), 10000U);
  EXPECT_EQ(a.mean(), 0.0);
}

TEST(Adwin, LargeJumpIsCaughtQuickly) {
  std::mt19937_64 rng(1);
  const auto bits = concat(bernoulli(2000, 0.1, rng), bernoulli(2000, 0.9, rng));
  Adwin a;
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (a.update(bits[i] != 0) == DriftDecision::drift && !first && i >= 2000) first = i;
  }
  ASSERT_TRUE(first.has_value());
  EXPECT_LT(*first - 2000, 300U);
}

TEST(Adwin, AgreesWithNaiveAllCutOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::uniform_real_distribution<double> base(0.05, 0.4);
    const double p0 = base(rng);
    // Even seeds stay stationary, odd seeds step up by 0.3 halfway.
    const double p1 = seed % 2 == 0 ? p0 : p0 + 0.3;
    const auto bits = concat(bernoulli(2500, p0, rng), bernoulli(2500, p1, rng));
    Adwin fast;
    NaiveAdwin slow(0.002);
    bool fast_hit = false, slow_hit = false;
    for (auto b : bits) {
      fast_hit = fast.insert(b) || fast_hit;
      slow_hit = slow.insert(b) || slow_hit;
    }
    EXPECT_EQ(fast_hit, slow_hit) << "seed " << seed;
    EXPECT_EQ(fast_hit, seed % 2 == 1) << "seed " << seed;
  }
}

TEST(Adwin, MeanMatchesRetainedBitsAndBucketsStayLogarithmic) {
  std::mt19937_64 rng(3);
  std::vector<std::uint8_t> history;
  for (int phase = 0; phase < 4; ++phase) {
    const auto part = bernoulli(3000, phase % 2 == 0 ? 0.2 : 0.7, rng);
    history.insert(history.end(), part.begin(), part.end());
  }
  Adwin a;
  for (std::size_t i = 0; i < history.size(); ++i) {
    a.update(history[i] != 0);
    const std::size_t w = a.width();
    const double truth =
        std::accumulate(history.begin() + static_cast<std::ptrdiff_t>(i + 1 - w),
                        history.begin() + static_cast<std::ptrdiff_t>(i + 1), 0.0) /
        static_cast<double>(w);
    ASSERT_NEAR(a.mean(), truth, 1e-12) << "step " << i;
    const auto sizes = a.bucket_sizes();
    ASSERT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), w);
    ASSERT_LE(static_cast<double>(a.bucket_count()), 5.0 * 5.0 * std::log2(static_cast<double>(w) + 1.0));
  }
  EXPECT_LT(a.width(), history.size());
}

TEST(Adwin, BucketSizesRunOldestToNewest) {
  Adwin a;
  for (int i = 0; i < 100; ++i) a.update(i % 3 == 0);
  const auto sizes = a.bucket_sizes();
  for (std::size_t i = 1; i < sizes.size(); ++i) EXPECT_GE(sizes[i - 1], sizes[i]);
  EXPECT_EQ(sizes.back(), 1U);
}

TEST(Adwin, BadParameters) {
  EXPECT_THROW(Adwin({0.0, 5}), ParameterError);
  EXPECT_THROW(Adwin({0.002, 1}), ParameterError);
}

TEST(Ddm, WarningThenDriftAfterRateJump) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(40 + seed);
    const auto bits = concat(bernoulli(1000, 0.05, rng), bernoulli(1000, 0.5, rng));
    // An error-free warm-up leaves p_min = s_min = 0 and the first error is
    // drift straight away; only streams with a non-degenerate minimum apply.
    if (std::count(bits.begin(), bits.begin() + 30, 1) == 0) continue;
    ++checked;
    Ddm d;
    std::optional<std::size_t> warn, drift, drift_after;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      const auto s = d.update(bits[i] != 0);
      if (s == DriftDecision::warning && !warn) warn = i;
      if (s == DriftDecision::drift && !drift) drift = i;
      if (s == DriftDecision::drift && i >= 1000 && !drift_after) drift_after = i;
    }
    ASSERT_TRUE(warn && drift && drift_after) << "seed " << seed;
    EXPECT_LT(*warn, *drift) << "seed " << seed;
    EXPECT_LT(*drift_after - 1000, 200U) << "seed " << seed;
  }
  EXPECT_GE(checked, 10);
}

TEST(Ddm, ThresholdRuleMatchesDirectEvaluation) {
  std::mt19937_64 rng(5);
  const auto bits = concat(bernoulli(800, 0.1, rng), bernoulli(800, 0.35, rng));
  Ddm d;
  double pmin = INFINITY, smin = INFINITY;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    errors += bits[i];
    const double n = static_cast<double>(i + 1);
    const double p = errors / n, s = std::sqrt(p * (1 - p) / n);
    auto expected = DriftDecision::no_drift;
    if (i + 1 >= 30) {
      if (p + s <= pmin + smin) {
        pmin = p;
        smin = s;
      }
      if (p + s > pmin + 3 * smin) expected = DriftDecision::drift;
      else if (p + s > pmin + 2 * smin) expected = DriftDecision::warning;
    }
    ASSERT_EQ(d.update(bits[i] != 0), expected) << "step " << i;
  }
}

TEST(Ddm, ErrorFreeWarmupStillDetectsLaterErrors) {
  Ddm d;
  for (int i = 0; i < 500; ++i) EXPECT_EQ(d.update(false), DriftDecision::no_drift);
  DriftDecision last = DriftDecision::no_drift;
  for (int i = 0; i < 50; ++i) last = dominant(last, d.update(true));
  EXPECT_EQ(last, DriftDecision::drift);
}

TEST(Eddm, ShrinkingErrorSpacingSignalsDrift) {
  std::mt19937_64 rng(6);
  const auto bits = concat(bernoulli(6000, 0.05, rng), bernoulli(3000, 0.4, rng));
  Eddm e;
  std::optional<std::size_t> drift_after;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (e.update(bits[i] != 0) == DriftDecision::drift && i >= 6000 && !drift_after) drift_after = i;
  }
  ASSERT_TRUE(drift_after.has_value());
  EXPECT_LT(*drift_after - 6000, 500U);
}

TEST(Eddm, RatioRuleMatchesDirectEvaluation) {
  std::mt19937_64 rng(16);
  const auto bits = concat(bernoulli(4000, 0.1, rng), bernoulli(2000, 0.3, rng));
  Eddm e;
  std::vector<double> gaps;
  std::size_t last = 0;
  double best = 0;
  auto expected = DriftDecision::no_drift;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      gaps.push_back(static_cast<double>(i + 1 - last));
      last = i + 1;
      const double n = static_cast<double>(gaps.size());
      const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / n;
      double ss = 0;
      for (double g : gaps) ss += (g - mean) * (g - mean);
      const double stat = mean + 2 * std::sqrt(ss / n);
      if (gaps.size() < 30) {
        expected = DriftDecision::no_drift;
      } else if (stat > best) {
        best = stat;
        expected = DriftDecision::no_drift;
      } else if (stat / best < 0.90) {
        expected = DriftDecision::drift;
      } else if (stat / best < 0.95) {
        expected = DriftDecision::warning;
      } else {
        expected = DriftDecision::no_drift;
      }
    }
    ASSERT_EQ(e.update(bits[i] != 0), expected) << "step " << i;
  }
}

TEST(Eddm, SilentBeforeThirtyErrors) {
  Eddm e;
  for (int i = 0; i < 29; ++i) EXPECT_EQ(e.update(true), DriftDecision::no_drift);
}

TEST(HddmA, MatchesDirectEvaluationOfTheBounds) {
  std::mt19937_64 rng(17);
  const auto bits = concat(bernoulli(3000, 0.15, rng), bernoulli(1000, 0.35, rng));
  HddmA h;
  double n = 0, c = 0, nm = 0, cm = 0;
  bool changed = false;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    n += 1;
    c += bits[i];
    if (nm == 0) {
      nm = n;
      cm = c;
    }
    const double ld = std::log(1 / 0.001), lw = std::log(1 / 0.005);
    if (cm / nm + std::sqrt(ld / (2 * nm)) >= c / n + std::sqrt(ld / (2 * n))) {
      nm = n;
      cm = c;
    }
    auto expected = DriftDecision::no_drift;
    if (nm != n) {
      const double m = (n - nm) / (nm * n);
      const double gap = c / n - cm / nm;
      if (gap >= std::sqrt(m / 2 * ld)) expected = DriftDecision::drift;
      else if (gap >= std::sqrt(m / 2 * lw)) expected = DriftDecision::warning;
    }
    const auto got = h.update(bits[i] != 0);
    if (!changed) ASSERT_EQ(got, expected) << "step " << i;
    // Past the first drift the detector restarts; stop comparing there.
    changed = changed || got == DriftDecision::drift;
  }
  EXPECT_TRUE(changed);
}

TEST(HddmA, DetectsRateIncrease) {
  std::mt19937_64 rng(7);
  HddmA h;
  EXPECT_NE(feed_errors(h, bernoulli(3000, 0.1, rng)), DriftDecision::drift);
  EXPECT_EQ(feed_errors(h, bernoulli(3000, 0.4, rng)), DriftDecision::drift);
}

TEST(HddmW, DetectsLargeRateIncrease) {
  std::mt19937_64 rng(8);
  HddmW h;
  EXPECT_NE(feed_errors(h, bernoulli(3000, 0.05, rng)), DriftDecision::drift);
  EXPECT_EQ(feed_errors(h, bernoulli(3000, 0.95, rng)), DriftDecision::drift);
}

class AlwaysRight final : public Classifier {
 public:
  int predict_one(std::span<const double> x) const override { return x[0] > 0.5 ? 1 : 0; }
  std::size_t dimensions() const noexcept override { return 1; }
  std::string_view name() const noexcept override { return "oracle"; }
};

TEST(EvaluateBatch, PerfectClassifierGivesNoDrift) {
  Matrix batch(200, 1);
  std::vector<int> labels(200);
  for (std::size_t i = 0; i < 200; ++i) {
    batch(i, 0) = i % 2 == 0 ? 0.9 : 0.1;
    labels[i] = i % 2 == 0 ? 1 : 0;
  }
  AlwaysRight clf;
  const auto bits = error_bits(clf, batch, labels);
  EXPECT_TRUE(std::all_of(bits.begin(), bits.end(), [](auto b) { return b == 0; }));
  Ddm d;
  EXPECT_EQ(evaluate_batch(d, clf, batch, labels), DriftDecision::no_drift);
  std::vector<int> short_labels(3);
  EXPECT_THROW((void)error_bits(clf, batch, short_labels), DimensionError);
}

TEST(FeedErrors, SplittingABatchDoesNotChangeTheVerdict) {
  std::mt19937_64 rng(9);
  const auto bits = concat(bernoulli(3000, 0.1, rng), bernoulli(3000, 0.6, rng));
  for (ErbKind kind : kAllErbKinds) {
    auto whole = make_erb_detector(kind);
    auto split = whole->clone();
    const auto full = feed_errors(*whole, bits);
    const std::span<const std::uint8_t> all(bits);
    const auto first = feed_errors(*split, all.first(2500));
    const auto second = feed_errors(*split, all.subspan(2500));
    EXPECT_EQ(dominant(first, second), full) << to_string(kind);
    EXPECT_EQ(whole->samples_seen(), split->samples_seen());
    EXPECT_EQ(whole->state(), split->state());
  }
}

TEST(ErbNames, RoundTrip) {
  for (ErbKind k : kAllErbKinds) {
    EXPECT_EQ(parse_erb(to_string(k)), k);
    EXPECT_EQ(make_erb_detector(k)->name(), to_string(k));
  }
  EXPECT_FALSE(parse_erb("PageHinkley").has_value());
}

}  // namespace
}  // namespace driftbench
