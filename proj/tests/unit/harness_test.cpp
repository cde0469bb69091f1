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

#include "driftbench/harness.hpp"

#include <gtest/gtest.h>

#include <set>

#include "driftbench/error.hpp"
#include "driftbench/report.hpp"

namespace driftbench {
namespace {

constexpr const char* kSmallSea = R"({
  "dataset": {"name": "SEA", "reference_rows": 2000, "batch_rows": 500, "batch_count": 6, "drift_batch": 2},
  "detectors": ["ADWIN", "kdqTrees", "EDE-KS"],
  "metrics": ["KL", "BTC"],
  "classifiers": ["NB"],
  "seeds": 3,
  "kdq": {"replicates": 50}
})";

TEST(Detectors, IdsRoundTrip) {
  const auto all = all_detectors();
  EXPECT_EQ(all.size(), 26U);
  std::set<std::string> ids;
  for (const auto& d : all) {
    ids.insert(d.id());
    auto back = parse_detector(d.id());
    ASSERT_TRUE(back.has_value()) << d.id();
    EXPECT_EQ(*back, d);
  }
  EXPECT_EQ(ids.size(), 26U);
  EXPECT_TRUE(ids.count("ADWIN+NB"));
  EXPECT_TRUE(ids.count("PCA-kdq-KLS"));
  EXPECT_TRUE(ids.count("EDE-MW"));
  EXPECT_FALSE(parse_detector("ADWIN+HT").has_value());
}

TEST(Detectors, ExpandGroups) {
  std::vector<std::string> erb{"ERB"};
  const ClassifierKind both[] = {ClassifierKind::NaiveBayes, ClassifierKind::AdaBoost};
  EXPECT_EQ(expand_detectors(erb, kAllMetrics, both).size(), 10U);
  std::vector<std::string> ddb{"DDB"};
  EXPECT_EQ(expand_detectors(ddb, kAllMetrics, both).size(), 16U);
  std::vector<std::string> bad{"PageHinkley"};
  EXPECT_THROW((void)expand_detectors(bad, kAllMetrics, both), ConfigError);
}

TEST(Config, ParsesSmallSea) {
  auto cfg = parse_config(kSmallSea);
  ASSERT_TRUE(cfg.dataset.synthetic.has_value());
  EXPECT_EQ(cfg.dataset.synthetic->batch_rows, 500U);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(cfg.detectors.size(), 1U + 2U + 1U);
  EXPECT_EQ(cfg.settings.replicates, 50U);
  EXPECT_EQ(cfg.condition.drift, DriftKind::abrupt);
}

TEST(Config, Defaults) {
  auto cfg = parse_config("{}");
  EXPECT_EQ(cfg.dataset.name, "SEA");
  EXPECT_EQ(cfg.detectors.size(), 26U);
  EXPECT_EQ(cfg.seeds.size(), 10U);
  EXPECT_EQ(cfg.settings.tree.max_leaf_count, 50U);
  EXPECT_DOUBLE_EQ(cfg.settings.tree.min_side, 1.0 / 1024);
  EXPECT_EQ(cfg.settings.replicates, 500U);
  EXPECT_EQ(cfg.dataset.synthetic->reference_rows, 25000U);
  EXPECT_EQ(cfg.dataset.synthetic->batch_count, 15U);
}

TEST(Config, Errors) {
  EXPECT_THROW((void)parse_config(R"({"detector": ["ADWIN"]})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"dataset": "MNIST"})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"drift": "gradual"})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"noise": 1.5})"), ConfigError);
  EXPECT_THROW((void)parse_config("not json"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"metrics": ["JS"]})"), ConfigError);
}

TEST(Condition, Labels) {
  Condition c;
  EXPECT_EQ(c.label(), "abrupt");
  c.drift = DriftKind::gradual;
  c.width = 5000;
  c.noise = 0.1;
  EXPECT_EQ(c.label(), "gradual-5000/noise-0.1");
  c.imbalance = Imbalance::ratio_1_2;
  EXPECT_EQ(c.label(), "gradual-5000/noise-0.1/imbalance-1:2");
}

TEST(Synthesize, GradualDriftStartsAtTheDriftBatch) {
  auto cfg = parse_config(kSmallSea);
  Condition c;
  c.drift = DriftKind::gradual;
  c.width = 1000;
  auto ds = synthesize(*cfg.dataset.synthetic, c, 4);
  ASSERT_EQ(ds.manifest.batches.size(), 6U);
  EXPECT_EQ(ds.manifest.batches[2].begin, 2000U + 1000U);
  c.width = 5000;
  EXPECT_THROW((void)synthesize(*cfg.dataset.synthetic, c, 4), ConfigError);
}

TEST(Synthesize, CleanBatchesDoNotDependOnWidth) {
  auto cfg = parse_config(kSmallSea);
  Condition a, b;
  a.drift = b.drift = DriftKind::gradual;
  a.width = 100;
  b.width = 1500;
  auto da = synthesize(*cfg.dataset.synthetic, a, 2);
  auto db = synthesize(*cfg.dataset.synthetic, b, 2);
  EXPECT_EQ(da.data.features.slice(0, 3000), db.data.features.slice(0, 3000));
}

TEST(Synthesize, ImbalancedLayoutStillFits) {
  auto cfg = parse_config(kSmallSea);
  Condition c;
  c.imbalance = Imbalance::ratio_1_2;
  auto ds = synthesize(*cfg.dataset.synthetic, c, 1);
  EXPECT_EQ(ds.data.labels.size(), 2000U + 6 * 500U);
}

TEST(Experiment, DeterministicAndThreadIndependent) {
  auto cfg = parse_config(kSmallSea);
  const auto serial = run_experiment(cfg);
  ASSERT_EQ(serial.size(), 3U * 4U);
  cfg.jobs = 3;
  const auto parallel = run_experiment(cfg);
  EXPECT_EQ(serial, parallel);
  for (const auto& r : serial) {
    EXPECT_EQ(r.decisions.size(), 6U);
    EXPECT_EQ(r.drift_batch, 2U);
    EXPECT_EQ(r.dataset, "SEA");
  }
}

TEST(Experiment, AdwinCatchesSeaDriftOnTheDriftBatch) {
  auto cfg = parse_config(R"({
    "dataset": {"name": "SEA", "reference_rows": 5000, "batch_rows": 5000, "batch_count": 4, "drift_batch": 2},
    "detectors": ["ADWIN+NB"], "seeds": 3})");
  const auto agg = aggregate(run_experiment(cfg));
  ASSERT_EQ(agg.size(), 1U);
  EXPECT_EQ(agg[0].mdp, 0.0);
  EXPECT_EQ(*agg[0].mean_latency, 0.0);
  EXPECT_EQ(*agg[0].mean_fpr, 0.0);
}

TEST(Report, RunsJsonRoundTrip) {
  auto cfg = parse_config(kSmallSea);
  cfg.seeds = {0};
  const auto runs = run_experiment(cfg);
  EXPECT_EQ(runs_from_json(runs_to_json(runs)), runs);
}

TEST(Report, CsvOutputs) {
  RunReport r;
  r.detector = "ADWIN+NB";
  r.group = "ERB";
  r.dataset = "SEA";
  r.condition = "abrupt";
  r.drift_batch = 2;
  r.decisions = {DriftDecision::no_drift, DriftDecision::no_drift, DriftDecision::drift};
  score(r);
  const RunReport none = [&] {
    RunReport n = r;
    n.detector = "DDM+NB";
    n.decisions.assign(3, DriftDecision::no_drift);
    score(n);
    return n;
  }();
  const RunReport both[] = {r, none};
  auto agg = aggregate(both);
  filter_by_mdp(agg);
  const auto csv = aggregates_to_csv(agg);
  EXPECT_NE(csv.find("ADWIN+NB"), std::string::npos);
  EXPECT_NE(csv.find("ND"), std::string::npos);
  const auto table = summary_table_csv(agg);
  EXPECT_NE(table.find("DDM+NB"), std::string::npos);
}

TEST(Sweep, RetainedDetectorsFollowTheFilter) {
  auto a = all_detectors();
  std::vector<AggregateReport> agg(2);
  agg[0].detector = "ADWIN+NB";
  agg[0].mdp = 0.0;
  agg[1].detector = "DDM+NB";
  agg[1].mdp = 0.4;
  filter_by_mdp(agg);
  const auto kept = retained_detectors(agg, a);
  ASSERT_EQ(kept.size(), 1U);
  EXPECT_EQ(kept[0].id(), "ADWIN+NB");
}

}  // namespace
}  // namespace driftbench
