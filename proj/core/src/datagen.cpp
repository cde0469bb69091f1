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

#include "driftbench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "driftbench/error.hpp"

namespace driftbench {

namespace {

constexpr std::uint64_t kSaltFeatures = 0x5EA0;
constexpr std::uint64_t kSaltConcept = 0xC0C0;
constexpr std::uint64_t kSaltNoise = 0x7015E;
constexpr std::uint64_t kSaltImbalance = 0x1B1A;
constexpr int kMaxRejections = 100000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool between(double v, double lo, double hi) { return v >= lo && v <= hi; }

void check_plan(const GeneratorSpec& spec) {
  if (spec.length == 0) throw ParameterError("stream length must be positive");
  if (spec.noise < 0.0 || spec.noise >= 1.0) throw ParameterError("noise must lie in [0, 1)");
  if (spec.drift_position > spec.length) throw ParameterError("drift position beyond the stream");
  if (spec.drift == DriftKind::gradual) {
    if (spec.width == 0) throw ParameterError("gradual drift needs a positive width");
    if (spec.drift_position + spec.width > spec.length) throw ParameterError("drift window exceeds the stream");
  }
}

DriftPlan plan_of(const GeneratorSpec& spec) {
  return DriftPlan{spec.drift, spec.drift_position, spec.width, spec.ramp};
}

}  // namespace

std::string_view to_string(StreamFamily f) noexcept { return f == StreamFamily::SEA ? "SEA" : "AGRAWAL"; }
std::string_view to_string(DriftKind k) noexcept { return k == DriftKind::abrupt ? "abrupt" : "gradual"; }
std::string_view to_string(RampShape r) noexcept { return r == RampShape::linear ? "linear" : "sigmoid"; }

std::optional<StreamFamily> parse_family(std::string_view s) noexcept {
  if (s == "SEA") return StreamFamily::SEA;
  if (s == "AGRAWAL" || s == "Agrawal") return StreamFamily::Agrawal;
  return std::nullopt;
}

std::optional<RampShape> parse_ramp(std::string_view s) noexcept {
  if (s == "linear") return RampShape::linear;
  if (s == "sigmoid") return RampShape::sigmoid;
  return std::nullopt;
}

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  return std::mt19937_64(splitmix64(splitmix64(seed ^ splitmix64(salt)) + index));
}

double post_concept_probability(const DriftPlan& plan, std::size_t i) {
  if (plan.kind == DriftKind::abrupt) return i >= plan.position ? 1.0 : 0.0;
  const double w = static_cast<double>(plan.width);
  const double x = static_cast<double>(i) - static_cast<double>(plan.position);
  if (plan.ramp == RampShape::sigmoid) {
    // Centered on the middle of the window, as in MOA's drift stream.
    return 1.0 / (1.0 + std::exp(-4.0 * (x - w / 2.0) / w));
  }
  if (x < 0.0) return 0.0;
  if (x >= w) return 1.0;
  return x / w;
}

InjectedRows inject_drift(const ConceptFn& before, const ConceptFn& after, const DriftPlan& plan,
                          std::size_t length, std::uint64_t seed, bool balance_classes) {
  if (plan.kind == DriftKind::gradual && plan.width == 0) throw ParameterError("gradual drift needs a positive width");
  InjectedRows out;
  out.rows.resize(length);
  out.labels.resize(length);
  out.post_concept.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double p = post_concept_probability(plan, i);
    bool use_after = p >= 1.0;
    if (p > 0.0 && p < 1.0) {
      auto coin = sample_engine(seed, i, kSaltConcept);
      use_after = std::uniform_real_distribution<double>(0.0, 1.0)(coin) < p;
    }
    const ConceptFn& concept_fn = use_after ? after : before;
    auto rng = sample_engine(seed, i, kSaltFeatures);
    const int wanted = static_cast<int>(i % 2);
    int label = concept_fn(rng, out.rows[i]);
    for (int tries = 0; balance_classes && label != wanted; ++tries) {
      if (tries == kMaxRejections) throw DegenerateInputError("concept never produces class " + std::to_string(wanted));
      label = concept_fn(rng, out.rows[i]);
    }
    out.labels[i] = label;
    out.post_concept[i] = use_after ? 1 : 0;
  }
  return out;
}

// ---------------------------------------------------------------- SEA

int sea_label(double f1, double f2, int concept_index) {
  if (concept_index < 0 || concept_index > 3) throw ParameterError("SEA concept index must be 0..3");
  return f1 + f2 <= kSeaThresholds[concept_index] ? 1 : 0;
}

LabeledStream generate_sea(const GeneratorSpec& spec) {
  if (spec.family != StreamFamily::SEA) throw ParameterError("spec is not a SEA spec");
  check_plan(spec);
  sea_label(0, 0, spec.concept_before);
  sea_label(0, 0, spec.concept_after);

  auto make = [](int concept_index) -> ConceptFn {
    return [concept_index](std::mt19937_64& rng, std::vector<double>& row) {
      row.resize(3);
      for (auto& v : row) v = uniform(rng, 0.0, 10.0);
      return sea_label(row[0], row[1], concept_index);
    };
  };
  auto rows = inject_drift(make(spec.concept_before), make(spec.concept_after), plan_of(spec), spec.length,
                           spec.seed, spec.balance_classes);

  LabeledStream s;
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> col(spec.length);
    for (std::size_t i = 0; i < spec.length; ++i) col[i] = rows.rows[i][c];
    s.features.add_numeric("f" + std::to_string(c + 1), std::move(col));
  }
  s.labels = std::move(rows.labels);
  s.post_concept = std::move(rows.post_concept);
  s.drift_index = spec.drift_position;
  return s;
}

// ---------------------------------------------------------------- Agrawal

AgrawalRecord draw_agrawal(std::mt19937_64& rng) {
  AgrawalRecord r;
  r.salary = uniform(rng, 20000.0, 150000.0);
  r.commission = r.salary >= 75000.0 ? 0.0 : uniform(rng, 10000.0, 75000.0);
  r.age = uniform_int(rng, 20, 80);
  r.elevel = uniform_int(rng, 0, 4);
  r.car = uniform_int(rng, 1, 20);
  r.zipcode = uniform_int(rng, 0, 8);
  r.hvalue = uniform(rng, 0.5, 1.5) * 100000.0 * (9 - r.zipcode);
  r.hyears = uniform_int(rng, 1, 30);
  r.loan = uniform(rng, 0.0, 500000.0);
  return r;
}

int agrawal_label(const AgrawalRecord& r, int function) {
  const double age = r.age;
  const double salary = r.salary;
  const int e = r.elevel;
  bool group_a = false;
  switch (function) {
    case 1:
      group_a = age < 40 || age >= 60;
      break;
    case 2:
      if (age < 40) group_a = between(salary, 50000, 100000);
      else if (age < 60) group_a = between(salary, 75000, 125000);
      else group_a = between(salary, 25000, 75000);
      break;
    case 3:
      if (age < 40) group_a = e == 0 || e == 1;
      else if (age < 60) group_a = e >= 1 && e <= 3;
      else group_a = e >= 2 && e <= 4;
      break;
    case 4:
      if (age < 40) {
        group_a = (e == 0 || e == 1) ? between(salary, 25000, 75000) : between(salary, 50000, 100000);
      } else if (age < 60) {
        group_a = (e >= 1 && e <= 3) ? between(salary, 50000, 100000) : between(salary, 75000, 125000);
      } else {
        group_a = (e >= 2 && e <= 4) ? between(salary, 50000, 100000) : between(salary, 25000, 75000);
      }
      break;
    case 5:
      if (age < 40) {
        group_a = between(salary, 50000, 100000) ? between(r.loan, 100000, 300000) : between(r.loan, 200000, 400000);
      } else if (age < 60) {
        group_a = between(salary, 75000, 125000) ? between(r.loan, 200000, 400000) : between(r.loan, 300000, 500000);
      } else {
        group_a = between(salary, 25000, 75000) ? between(r.loan, 300000, 500000) : between(r.loan, 100000, 300000);
      }
      break;
    case 6: {
      const double total = salary + r.commission;
      if (age < 40) group_a = between(total, 50000, 100000);
      else if (age < 60) group_a = between(total, 75000, 125000);
      else group_a = between(total, 25000, 75000);
      break;
    }
    case 7:
      group_a = 0.67 * (salary + r.commission) - 0.2 * r.loan - 20000 > 0;
      break;
    case 8:
      group_a = 0.67 * (salary + r.commission) - 5000 * e - 20000 > 0;
      break;
    case 9:
      group_a = 0.67 * (salary + r.commission) - 5000 * e - 0.2 * r.loan - 10000 > 0;
      break;
    case 10: {
      const double equity = r.hyears >= 20 ? 0.1 * r.hvalue * (r.hyears - 20) : 0.0;
      group_a = 0.67 * (salary + r.commission) - 5000 * e + 0.2 * equity - 10000 > 0;
      break;
    }
    default:
      throw ParameterError("Agrawal function index must be 1..10");
  }
  return group_a ? 0 : 1;
}

LabeledStream generate_agrawal(const GeneratorSpec& spec) {
  if (spec.family != StreamFamily::Agrawal) throw ParameterError("spec is not an Agrawal spec");
  check_plan(spec);
  agrawal_label(AgrawalRecord{}, spec.concept_before);
  agrawal_label(AgrawalRecord{}, spec.concept_after);

  auto make = [](int function) -> ConceptFn {
    return [function](std::mt19937_64& rng, std::vector<double>& row) {
      const auto r = draw_agrawal(rng);
      row = {r.salary, r.commission, r.age, double(r.elevel), double(r.car), double(r.zipcode),
             r.hvalue, r.hyears, r.loan};
      return agrawal_label(r, function);
    };
  };
  auto rows = inject_drift(make(spec.concept_before), make(spec.concept_after), plan_of(spec), spec.length,
                           spec.seed, spec.balance_classes);

  static const char* kNames[] = {"salary", "commission", "age", "elevel", "car",
                                 "zipcode", "hvalue", "hyears", "loan"};
  LabeledStream s;
  for (std::size_t c = 0; c < 9; ++c) {
    const bool categorical = c >= 3 && c <= 5;
    if (categorical) {
      std::vector<std::string> col(spec.length);
      for (std::size_t i = 0; i < spec.length; ++i) col[i] = std::to_string(static_cast<int>(rows.rows[i][c]));
      s.features.add_categorical(kNames[c], std::move(col));
    } else {
      std::vector<double> col(spec.length);
      for (std::size_t i = 0; i < spec.length; ++i) col[i] = rows.rows[i][c];
      s.features.add_numeric(kNames[c], std::move(col));
    }
  }
  s.labels = std::move(rows.labels);
  s.post_concept = std::move(rows.post_concept);
  s.drift_index = spec.drift_position;
  return s;
}

// ---------------------------------------------------------------- noise / imbalance

LabeledStream apply_noise_and_imbalance(LabeledStream stream, double noise, Imbalance imbalance,
                                        std::uint64_t seed, std::size_t min_rows) {
  if (noise < 0.0 || noise >= 1.0) throw ParameterError("noise must lie in [0, 1)");
  if (noise > 0.0) {
    for (std::size_t i = 0; i < stream.labels.size(); ++i) {
      auto rng = sample_engine(seed, i, kSaltNoise);
      if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < noise) stream.labels[i] = 1 - stream.labels[i];
    }
  }
  if (imbalance == Imbalance::balanced) return stream;

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < stream.labels.size(); ++i) by_class[stream.labels[i] != 0 ? 1 : 0].push_back(i);
  // Ties go to class 1 as the minority.
  const int minority = by_class[1].size() <= by_class[0].size() ? 1 : 0;
  const auto& majority_idx = by_class[1 - minority];
  const auto& minority_idx = by_class[minority];
  const std::size_t target = majority_idx.size() / 2;

  std::vector<std::size_t> kept_minority;
  if (minority_idx.size() <= target) {
    kept_minority = minority_idx;
  } else {
    std::mt19937_64 rng = sample_engine(seed, 0, kSaltImbalance);
    kept_minority.reserve(target);
    std::sample(minority_idx.begin(), minority_idx.end(), std::back_inserter(kept_minority), target, rng);
  }
  std::vector<std::size_t> keep;
  keep.reserve(majority_idx.size() + kept_minority.size());
  std::merge(majority_idx.begin(), majority_idx.end(), kept_minority.begin(), kept_minority.end(),
             std::back_inserter(keep));
  if (keep.size() < min_rows) throw InsufficientDataError("imbalance leaves fewer rows than one batch");

  LabeledStream out;
  out.features = stream.features.select(keep);
  out.labels.reserve(keep.size());
  out.post_concept.reserve(keep.size());
  for (auto i : keep) {
    out.labels.push_back(stream.labels[i]);
    out.post_concept.push_back(stream.post_concept.empty() ? 0 : stream.post_concept[i]);
  }
  out.drift_index = static_cast<std::size_t>(
      std::lower_bound(keep.begin(), keep.end(), stream.drift_index) - keep.begin());
  return out;
}

LabeledStream generate(const GeneratorSpec& spec) {
  auto s = spec.family == StreamFamily::SEA ? generate_sea(spec) : generate_agrawal(spec);
  return apply_noise_and_imbalance(std::move(s), spec.noise, spec.imbalance, spec.seed);
}

}  // namespace driftbench
