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

#include "driftbench/evaluation.hpp"

#include <gtest/gtest.h>

#include "driftbench/error.hpp"

namespace driftbench {
namespace {

constexpr auto N = DriftDecision::no_drift;
constexpr auto W = DriftDecision::warning;
constexpr auto D = DriftDecision::drift;

RunReport run(std::string detector, std::uint64_t seed, std::vector<DriftDecision> decisions, std::size_t j = 2) {
  RunReport r;
  r.detector = std::move(detector);
  r.group = "ERB";
  r.dataset = "SEA";
  r.condition = "abrupt";
  r.seed = seed;
  r.decisions = std::move(decisions);
  r.drift_batch = j;
  score(r);
  return r;
}

TEST(Latency, Examples) {
  EXPECT_DOUBLE_EQ(*latency(2, 2, 10), 0.0);
  EXPECT_DOUBLE_EQ(*latency(2, 4, 10), 0.2);
  EXPECT_FALSE(latency(2, std::nullopt, 10).has_value());
  EXPECT_THROW((void)latency(2, 1, 10), UsageError);
  EXPECT_THROW((void)latency(2, 10, 10), UsageError);
}

TEST(FirstDetection, IgnoresWarningsAndPreDriftFlags) {
  std::vector<DriftDecision> d{D, N, W, N, D, D};
  EXPECT_EQ(first_detection(d, 2), 4U);
  std::vector<DriftDecision> none{D, D, W, W};
  EXPECT_FALSE(first_detection(none, 2).has_value());
}

TEST(FalsePositiveRate, Examples) {
  std::vector<DriftDecision> one_post{N, N, D, N};
  EXPECT_DOUBLE_EQ(*false_positive_rate(one_post, 2), 0.0);
  std::vector<DriftDecision> both{D, D, N, N};
  EXPECT_DOUBLE_EQ(*false_positive_rate(both, 2), 1.0);
  std::vector<DriftDecision> warnings_only{W, W, W, N};
  EXPECT_FALSE(false_positive_rate(warnings_only, 2).has_value());
  EXPECT_DOUBLE_EQ(plain_false_positive_rate(warnings_only, 2), 0.0);
  EXPECT_THROW((void)plain_false_positive_rate(both, 0), UsageError);
}

TEST(Score, FlagEverythingDetector) {
  auto r = run("X", 0, std::vector<DriftDecision>(15, D));
  EXPECT_EQ(*r.latency, 0.0);
  EXPECT_EQ(*r.fpr, 1.0);
  EXPECT_EQ(r.batch_count, 15U);
}

TEST(Mdp, CountsSeedsWithoutDetection) {
  std::vector<RunReport> runs;
  for (std::uint64_t s = 0; s < 10; ++s) runs.push_back(run("X", s, {N, N, s < 7 ? N : D, N}));
  EXPECT_DOUBLE_EQ(miss_detection_probability(runs), 0.7);
  std::vector<RunReport> all;
  for (std::uint64_t s = 0; s < 10; ++s) all.push_back(run("X", s, {N, N, D}));
  EXPECT_DOUBLE_EQ(miss_detection_probability(all), 0.0);
  runs.push_back(run("Y", 0, {N, N, D}));
  EXPECT_THROW((void)miss_detection_probability(runs), UsageError);
  EXPECT_THROW((void)miss_detection_probability(std::span<const RunReport>{}), UsageError);
}

TEST(Aggregate, MeansAndExclusion) {
  std::vector<RunReport> runs;
  runs.push_back(run("A", 1, {N, D, D, N}));
  runs.push_back(run("A", 0, {N, N, N, D}));
  runs.push_back(run("B", 0, {N, N, N, N}));
  runs.push_back(run("B", 1, {N, N, D, N}));
  auto agg = aggregate(runs);
  ASSERT_EQ(agg.size(), 2U);
  EXPECT_EQ(agg[0].detector, "A");
  EXPECT_DOUBLE_EQ(*agg[0].mean_latency, 0.125);
  EXPECT_DOUBLE_EQ(*agg[0].mean_fpr, 0.25);
  EXPECT_EQ(agg[0].mdp, 0.0);
  EXPECT_DOUBLE_EQ(*agg[1].mean_latency, 0.0);
  EXPECT_DOUBLE_EQ(*agg[1].mean_fpr, 0.0);  // the ND seed does not count
  EXPECT_EQ(agg[1].mdp, 0.5);
  filter_by_mdp(agg);
  EXPECT_FALSE(agg[0].excluded);
  EXPECT_TRUE(agg[1].excluded);
}

TEST(Aggregate, StrictThreshold) {
  std::vector<RunReport> runs;
  for (std::uint64_t s = 0; s < 10; ++s) runs.push_back(run("A", s, {N, N, s == 3 ? N : D}));
  auto agg = aggregate(runs);
  EXPECT_DOUBLE_EQ(agg[0].mdp, 0.1);
  filter_by_mdp(agg);
  EXPECT_TRUE(agg[0].excluded);
}

TEST(Aggregate, SeedOrderDoesNotMatter) {
  std::vector<RunReport> runs;
  for (std::uint64_t s = 0; s < 6; ++s) runs.push_back(run("A", s, {s % 2 ? D : N, N, N, D, N}));
  auto forward = aggregate(runs);
  std::reverse(runs.begin(), runs.end());
  EXPECT_EQ(aggregate(runs), forward);
}

}  // namespace
}  // namespace driftbench
