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

// Experiment orchestration: reference / batch layout, detector fitting,
// per-batch verdicts, and the width / noise / imbalance sweeps.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftbench/classifiers.hpp"
#include "driftbench/datagen.hpp"
#include "driftbench/ddb_detectors.hpp"
#include "driftbench/erb_detectors.hpp"
#include "driftbench/evaluation.hpp"
#include "driftbench/ingest.hpp"
#include "driftbench/kdq_tree.hpp"

namespace driftbench {

enum class DetectorGroup { ERB, DDB };
enum class DdbVariant { EDE, KDQ, PCA_KDQ };

struct DetectorSpec {
  DetectorGroup group = DetectorGroup::ERB;
  ErbKind erb = ErbKind::ADWIN;
  ClassifierKind classifier = ClassifierKind::NaiveBayes;
  DdbVariant ddb = DdbVariant::KDQ;
  MetricKind metric = MetricKind::KL;
  TwoSampleTestKind test = TwoSampleTestKind::KS;

  /// "ADWIN+NB", "kdqTrees-KL", "PCA-kdq-BTC", "EDE-MW", ...
  [[nodiscard]] std::string id() const;
  friend bool operator==(const DetectorSpec& a, const DetectorSpec& b) { return a.id() == b.id(); }
};

std::optional<DetectorSpec> parse_detector(std::string_view id);

/// Expands a detector list. Each entry is a full id, a bare ERB name
/// (paired with every classifier in `classifiers`), "kdqTrees" / "PCA-kdq"
/// (paired with every metric in `metrics`), "EDE" (both tests), or one of
/// the groups "ERB", "DDB", "all". Unknown names throw ConfigError.
std::vector<DetectorSpec> expand_detectors(std::span<const std::string> names,
                                           std::span<const MetricKind> metrics,
                                           std::span<const ClassifierKind> classifiers);

std::vector<DetectorSpec> all_detectors();

struct DetectorSettings {
  KdqParams tree{};
  std::size_t replicates = 500;
  double ede_alpha = 0.05;
  double pca_retained = 0.95;
  std::size_t smote_k = 5;
};

struct SyntheticDataset {
  std::string name;
  StreamFamily family = StreamFamily::SEA;
  int concept_before = 0;
  int concept_after = 3;
  std::size_t reference_rows = 25000;
  std::size_t batch_rows = 5000;
  std::size_t batch_count = 15;
  std::size_t drift_batch = 2;
};

/// "SEA" (theta 8 -> 9.5), "AGRAW1" (function 1 -> 3), "AGRAW2" (2 -> 5).
std::optional<SyntheticDataset> synthetic_preset(std::string_view name);

struct DatasetSource {
  std::string name;
  std::optional<SyntheticDataset> synthetic;
  std::optional<RealDatasetKind> real;
  std::filesystem::path csv;
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> schema;
};

struct Condition {
  DriftKind drift = DriftKind::abrupt;
  std::size_t width = 0;
  RampShape ramp = RampShape::linear;
  double noise = 0.0;
  Imbalance imbalance = Imbalance::balanced;

  /// "abrupt", "gradual-5000", "abrupt/noise-0.2", "abrupt/imbalance-1:2", ...
  [[nodiscard]] std::string label() const;
};

struct ExperimentConfig {
  DatasetSource dataset;
  Condition condition;
  std::vector<DetectorSpec> detectors;
  std::vector<std::uint64_t> seeds;
  DetectorSettings settings;
  // Oversample the classifier training data with SMOTE; defaults to on for
  // imbalanced conditions.
  std::optional<bool> smote;
  std::size_t jobs = 1;
};

/// Parses a JSON config (see README for the keys). Validation errors throw
/// ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig read_config(const std::filesystem::path& path);

/// Builds the synthetic stream for one seed and lays it out so that the
/// drift (or the start of a gradual transition) is the first row of the
/// drift batch.
Dataset synthesize(const SyntheticDataset& ds, const Condition& condition, std::uint64_t seed);

/// Runs every detector on one prepared dataset.
std::vector<RunReport> run_on_dataset(const Dataset& data, const ExperimentConfig& config, std::uint64_t seed);

/// All (detector, seed) runs, ordered by seed then detector list order.
std::vector<RunReport> run_experiment(const ExperimentConfig& config);

struct SweepPoint {
  Condition condition;
  std::vector<RunReport> runs;
  std::vector<AggregateReport> aggregates;
};

inline constexpr std::size_t kPaperWidths[] = {500, 1000, 5000, 10000, 20000};
inline constexpr double kPaperNoise[] = {0.0, 0.1, 0.2};

std::vector<SweepPoint> sweep_widths(const ExperimentConfig& base, std::span<const std::size_t> widths);
std::vector<SweepPoint> sweep_noise(const ExperimentConfig& base, std::span<const double> levels);
/// Balanced then 1:2.
std::vector<SweepPoint> sweep_imbalance(const ExperimentConfig& base);

/// Detectors kept by filter_by_mdp in `abrupt` for the given dataset.
std::vector<DetectorSpec> retained_detectors(std::span<const AggregateReport> abrupt,
                                             std::span<const DetectorSpec> candidates);

}  // namespace driftbench
