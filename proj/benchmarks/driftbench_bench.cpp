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


#include <benchmark/benchmark.h>

#include <iterator>
#include <random>
#include <vector>

#include "driftbench/classifiers.hpp"
#include "driftbench/erb_detectors.hpp"
#include "driftbench/harness.hpp"
#include "driftbench/kdq_tree.hpp"
#include "driftbench/similarity.hpp"
#include "driftbench/stat_tests.hpp"

namespace driftbench {
namespace {

Matrix uniform(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
  return m;
}

void BM_KdqBuild(benchmark::State& state) {
  const auto ref = uniform(static_cast<std::size_t>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(KdqTree::build(ref));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KdqBuild)->Arg(5000)->Arg(25000);

void BM_KdqBootstrap(benchmark::State& state) {
  const auto ref = uniform(25000, 3, 2);
  const auto tree = KdqTree::build(ref);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bootstrap_critical(tree, ref, 5000, kAllMetrics, state.range(0), 7));
  }
}
BENCHMARK(BM_KdqBootstrap)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const auto ref = uniform(25000, 3, 3);
  const auto tree = KdqTree::build(ref);
  const auto eps = smoothing_epsilon(ref.rows());
  const auto p = smooth(tree.reference_histogram(), eps);
  const auto q = smooth(histogram_of(tree, uniform(5000, 3, 4)), eps);
  const auto kind = kAllMetrics[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(distance(kind, p, q));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Distance)->DenseRange(0, 6);

std::vector<std::uint8_t> error_stream(std::size_t n) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution low(0.1), high(0.4);
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = i < n / 2 ? low(rng) : high(rng);
  return bits;
}

void BM_ErbUpdate(benchmark::State& state) {
  const auto kind = kAllErbKinds[static_cast<std::size_t>(state.range(0))];
  const auto bits = error_stream(75000);
  for (auto _ : state) {
    auto d = make_erb_detector(kind);
    benchmark::DoNotOptimize(feed_errors(*d, bits));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bits.size()));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_ErbUpdate)->DenseRange(0, static_cast<int>(std::size(kAllErbKinds)) - 1);

void BM_KsTest(benchmark::State& state) {
  const auto a = uniform(25000, 1, 6).column(0);
  const auto b = uniform(5000, 1, 7).column(0);
  for (auto _ : state) benchmark::DoNotOptimize(ks_test(a, b));
}
BENCHMARK(BM_KsTest);

void BM_MannWhitney(benchmark::State& state) {
  const auto a = uniform(25000, 1, 8).column(0);
  const auto b = uniform(5000, 1, 9).column(0);
  for (auto _ : state) benchmark::DoNotOptimize(mann_whitney_test(a, b));
}
BENCHMARK(BM_MannWhitney);

void BM_ClassifierPredict(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? ClassifierKind::NaiveBayes : ClassifierKind::AdaBoost;
  const auto x = uniform(5000, 3, 10);
  std::vector<int> y(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) y[i] = x(i, 0) + x(i, 1) > 0.8 ? 1 : 0;
  const auto clf = fit_classifier(kind, x, y);
  for (auto _ : state) benchmark::DoNotOptimize(clf->predict(x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.rows()));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_ClassifierPredict)->Arg(0)->Arg(1);

void BM_SeaRun(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.dataset.name = "SEA";
  cfg.dataset.synthetic = synthetic_preset("SEA");
  cfg.detectors = all_detectors();
  cfg.seeds = {0};
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_SeaRun)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
}  // namespace driftbench

BENCHMARK_MAIN();
