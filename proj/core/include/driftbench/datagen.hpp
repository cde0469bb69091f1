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

// SEA and Agrawal stream generators with drift injection, label noise and
// minority subsampling.
//
// Every sample is drawn from its own engine seeded from (seed, index), so a
// stream is reproducible sample by sample and two streams that differ only in
// drift shape share their features wherever the active concept agrees.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "driftbench/table.hpp"

namespace driftbench {

enum class StreamFamily { SEA, Agrawal };
enum class DriftKind { abrupt, gradual };
enum class RampShape { linear, sigmoid };
enum class Imbalance { balanced, ratio_1_2 };

std::string_view to_string(StreamFamily f) noexcept;
std::string_view to_string(DriftKind k) noexcept;
std::string_view to_string(RampShape r) noexcept;
std::optional<StreamFamily> parse_family(std::string_view s) noexcept;
std::optional<RampShape> parse_ramp(std::string_view s) noexcept;

/// SEA thresholds for concepts 0..3.
inline constexpr double kSeaThresholds[] = {8.0, 9.0, 7.0, 9.5};

struct GeneratorSpec {
  StreamFamily family = StreamFamily::SEA;
  // SEA: concept indices 0..3. Agrawal: classification functions 1..10.
  int concept_before = 0;
  int concept_after = 3;
  DriftKind drift = DriftKind::abrupt;
  std::size_t width = 0;         // gradual only
  RampShape ramp = RampShape::linear;
  std::size_t drift_position = 0;  // first sample index of the transition
  std::size_t length = 0;
  double noise = 0.0;
  Imbalance imbalance = Imbalance::balanced;
  // Draw samples so that class labels alternate 0,1,0,1,... (rejection
  // sampling under the active concept).
  bool balance_classes = true;
  std::uint64_t seed = 0;
};

struct LabeledStream {
  RawTable features;
  std::vector<int> labels;
  std::size_t drift_index = 0;            // first sample of the transition
  std::vector<std::uint8_t> post_concept; // 1 where the sample came from the new concept
};

/// Engine for sample `index` of the stream seeded with `seed`; `salt`
/// separates independent uses of the same index.
std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index, std::uint64_t salt);

/// A concept draws one feature vector from `rng` into `row` and returns its
/// label under the concept's rule.
using ConceptFn = std::function<int(std::mt19937_64& rng, std::vector<double>& row)>;

struct DriftPlan {
  DriftKind kind = DriftKind::abrupt;
  std::size_t position = 0;
  std::size_t width = 0;
  RampShape ramp = RampShape::linear;
};

/// Probability that sample `i` comes from the new concept.
double post_concept_probability(const DriftPlan& plan, std::size_t i);

struct InjectedRows {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::uint8_t> post_concept;
};

InjectedRows inject_drift(const ConceptFn& before, const ConceptFn& after, const DriftPlan& plan,
                          std::size_t length, std::uint64_t seed, bool balance_classes);

// Rules, exposed for tests.
int sea_label(double f1, double f2, int concept_index);

struct AgrawalRecord {
  double salary = 0, commission = 0, age = 0;
  int elevel = 0, car = 1, zipcode = 0;
  double hvalue = 0, hyears = 0, loan = 0;
};
/// 0 = group A, 1 = group B.
int agrawal_label(const AgrawalRecord& r, int function);
AgrawalRecord draw_agrawal(std::mt19937_64& rng);

LabeledStream generate_sea(const GeneratorSpec& spec);
LabeledStream generate_agrawal(const GeneratorSpec& spec);

/// Flips each label with probability `noise`, then (for 1:2) subsamples the
/// minority class so that minority = floor(majority / 2). Order is preserved
/// and drift_index is remapped to the first retained sample at or after it.
LabeledStream apply_noise_and_imbalance(LabeledStream stream, double noise, Imbalance imbalance,
                                        std::uint64_t seed, std::size_t min_rows = 1);

/// generate_sea / generate_agrawal followed by apply_noise_and_imbalance.
LabeledStream generate(const GeneratorSpec& spec);

}  // namespace driftbench
