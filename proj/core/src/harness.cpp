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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "driftbench/error.hpp"
#include "driftbench/pipeline.hpp"

namespace driftbench {

using nlohmann::json;

namespace {

constexpr std::uint64_t kSaltBootstrap = 0xB0075;
constexpr std::uint64_t kSaltSmote = 0x53073;

// Imbalanced streams lose about a quarter of their rows to minority
// subsampling; generate this much more so the layout still fits.
constexpr double kImbalanceHeadroom = 1.4;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  auto engine = sample_engine(seed, 0, salt);
  return engine();
}

std::string format_number(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------- detector ids

std::string DetectorSpec::id() const {
  if (group == DetectorGroup::ERB) return std::string(to_string(erb)) + "+" + std::string(to_string(classifier));
  switch (ddb) {
    case DdbVariant::EDE: return "EDE-" + std::string(to_string(test));
    case DdbVariant::KDQ: return "kdqTrees-" + std::string(to_string(metric));
    case DdbVariant::PCA_KDQ: return "PCA-kdq-" + std::string(to_string(metric));
  }
  return "?";
}

std::optional<DetectorSpec> parse_detector(std::string_view id) {
  DetectorSpec s;
  if (const auto plus = id.find('+'); plus != std::string_view::npos) {
    const auto erb = parse_erb(id.substr(0, plus));
    const auto cls = parse_classifier(id.substr(plus + 1));
    if (!erb || !cls) return std::nullopt;
    s.group = DetectorGroup::ERB;
    s.erb = *erb;
    s.classifier = *cls;
    return s;
  }
  s.group = DetectorGroup::DDB;
  auto suffix = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (id.size() > prefix.size() && id.substr(0, prefix.size()) == prefix) return id.substr(prefix.size());
    return std::nullopt;
  };
  if (auto rest = suffix("EDE-")) {
    const auto t = parse_test(*rest);
    if (!t) return std::nullopt;
    s.ddb = DdbVariant::EDE;
    s.test = *t;
    return s;
  }
  if (auto rest = suffix("kdqTrees-")) {
    const auto m = parse_metric(*rest);
    if (!m) return std::nullopt;
    s.ddb = DdbVariant::KDQ;
    s.metric = *m;
    return s;
  }
  if (auto rest = suffix("PCA-kdq-")) {
    const auto m = parse_metric(*rest);
    if (!m) return std::nullopt;
    s.ddb = DdbVariant::PCA_KDQ;
    s.metric = *m;
    return s;
  }
  return std::nullopt;
}

std::vector<DetectorSpec> expand_detectors(std::span<const std::string> names, std::span<const MetricKind> metrics,
                                           std::span<const ClassifierKind> classifiers) {
  std::vector<DetectorSpec> out;
  auto add = [&](const DetectorSpec& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  auto add_erb = [&](ErbKind k) {
    for (auto c : classifiers) add(DetectorSpec{DetectorGroup::ERB, k, c});
  };
  auto add_kdq = [&](DdbVariant v) {
    for (auto m : metrics) {
      DetectorSpec s;
      s.group = DetectorGroup::DDB;
      s.ddb = v;
      s.metric = m;
      add(s);
    }
  };
  auto add_ede = [&] {
    for (auto t : {TwoSampleTestKind::KS, TwoSampleTestKind::MW}) {
      DetectorSpec s;
      s.group = DetectorGroup::DDB;
      s.ddb = DdbVariant::EDE;
      s.test = t;
      add(s);
    }
  };
  for (const auto& name : names) {
    if (name == "all" || name == "ERB") {
      for (auto k : kAllErbKinds) add_erb(k);
    }
    if (name == "all" || name == "DDB") {
      add_ede();
      add_kdq(DdbVariant::KDQ);
      add_kdq(DdbVariant::PCA_KDQ);
    }
    if (name == "all" || name == "ERB" || name == "DDB") continue;
    if (const auto k = parse_erb(name)) add_erb(*k);
    else if (name == "kdqTrees") add_kdq(DdbVariant::KDQ);
    else if (name == "PCA-kdq") add_kdq(DdbVariant::PCA_KDQ);
    else if (name == "EDE") add_ede();
    else if (const auto s = parse_detector(name)) add(*s);
    else throw ConfigError("unknown detector '" + name + "'");
  }
  return out;
}

std::vector<DetectorSpec> all_detectors() {
  const std::string all[] = {"all"};
  const ClassifierKind cls[] = {ClassifierKind::NaiveBayes, ClassifierKind::AdaBoost};
  return expand_detectors(all, kAllMetrics, cls);
}

// ---------------------------------------------------------------- datasets

std::optional<SyntheticDataset> synthetic_preset(std::string_view name) {
  SyntheticDataset d;
  d.name = std::string(name);
  if (name == "SEA") {
    d.family = StreamFamily::SEA;
    d.concept_before = 0;
    d.concept_after = 3;
  } else if (name == "AGRAW1") {
    d.family = StreamFamily::Agrawal;
    d.concept_before = 1;
    d.concept_after = 3;
  } else if (name == "AGRAW2") {
    d.family = StreamFamily::Agrawal;
    d.concept_before = 2;
    d.concept_after = 5;
  } else {
    return std::nullopt;
  }
  return d;
}

std::string Condition::label() const {
  std::string s = drift == DriftKind::abrupt ? "abrupt" : "gradual-" + std::to_string(width);
  if (drift == DriftKind::gradual && ramp == RampShape::sigmoid) s += "-sigmoid";
  if (noise > 0.0) s += "/noise-" + format_number(noise);
  if (imbalance == Imbalance::ratio_1_2) s += "/imbalance-1:2";
  return s;
}

Dataset synthesize(const SyntheticDataset& ds, const Condition& c, std::uint64_t seed) {
  const std::size_t lead = ds.reference_rows + ds.drift_batch * ds.batch_rows;
  const std::size_t tail = (ds.batch_count - ds.drift_batch) * ds.batch_rows;
  const double headroom = c.imbalance == Imbalance::ratio_1_2 ? kImbalanceHeadroom : 1.0;
  const auto drift_at = static_cast<std::size_t>(std::ceil(static_cast<double>(lead) * headroom));

  GeneratorSpec g;
  g.family = ds.family;
  g.concept_before = ds.concept_before;
  g.concept_after = ds.concept_after;
  g.drift = c.drift;
  g.ramp = c.ramp;
  g.seed = seed;
  g.length = drift_at + static_cast<std::size_t>(std::ceil(static_cast<double>(tail) * headroom));
  g.drift_position = drift_at;
  if (c.drift == DriftKind::gradual) {
    if (c.width == 0) throw ConfigError("gradual drift needs a positive width");
    if (drift_at + c.width > g.length) {
      throw ConfigError("drift width " + std::to_string(c.width) + " does not fit the test region");
    }
    g.width = c.width;
  }

  LabeledStream s = ds.family == StreamFamily::SEA ? generate_sea(g) : generate_agrawal(g);
  s = apply_noise_and_imbalance(std::move(s), c.noise, c.imbalance, seed, ds.batch_rows);
  auto out = layout_stream(s, ds.name, ds.reference_rows, ds.batch_rows, ds.batch_count, ds.drift_batch);
  out.manifest.notes.push_back("seed " + std::to_string(seed) + ", " + c.label());
  return out;
}

// ---------------------------------------------------------------- runs

std::vector<RunReport> run_on_dataset(const Dataset& data, const ExperimentConfig& config, std::uint64_t seed) {
  const auto& m = data.manifest;
  validate(m, data.data.labels.size());
  const auto& table = data.data.features;
  const std::span<const int> all_labels(data.data.labels);

  const RawTable ref_raw = table.slice(m.reference.begin, m.reference.end);
  const auto pipeline = FeaturePipeline::fit(ref_raw);
  const Matrix ref = pipeline.transform(ref_raw);
  const auto ref_labels = all_labels.subspan(m.reference.begin, m.reference.size());

  std::vector<Matrix> batches;
  std::vector<std::span<const int>> batch_labels;
  std::size_t total_batch_rows = 0;
  for (const auto& b : m.batches) {
    batches.push_back(pipeline.transform(table.slice(b.begin, b.end)));
    batch_labels.push_back(all_labels.subspan(b.begin, b.size()));
    total_batch_rows += b.size();
  }
  const std::size_t n_batches = batches.size();

  std::vector<std::vector<DriftDecision>> decisions(config.detectors.size(),
                                                    std::vector<DriftDecision>(n_batches));

  // ---- ERB: one classifier per kind, error bits shared across detectors.
  const bool use_smote = config.smote.value_or(config.condition.imbalance == Imbalance::ratio_1_2);
  std::map<ClassifierKind, std::vector<std::vector<std::uint8_t>>> bits;
  for (const auto& d : config.detectors) {
    if (d.group != DetectorGroup::ERB || bits.count(d.classifier)) continue;
    std::unique_ptr<Classifier> clf;
    if (use_smote) {
      const auto balanced = smote(ref, ref_labels, config.settings.smote_k, derive_seed(seed, kSaltSmote));
      clf = fit_classifier(d.classifier, balanced.samples, balanced.labels);
    } else {
      clf = fit_classifier(d.classifier, ref, ref_labels);
    }
    auto& per_batch = bits[d.classifier];
    for (std::size_t b = 0; b < n_batches; ++b) per_batch.push_back(error_bits(*clf, batches[b], batch_labels[b]));
  }
  for (std::size_t i = 0; i < config.detectors.size(); ++i) {
    const auto& d = config.detectors[i];
    if (d.group != DetectorGroup::ERB) continue;
    auto det = make_erb_detector(d.erb);
    for (std::size_t b = 0; b < n_batches; ++b) decisions[i][b] = feed_errors(*det, bits[d.classifier][b]);
  }

  // ---- DDB: one tree (and one PCA) shared by all metrics.
  KdqDetectorParams kp;
  kp.tree = config.settings.tree;
  kp.replicates = config.settings.replicates;
  kp.batch_size = std::max<std::size_t>(1, (total_batch_rows + n_batches / 2) / n_batches);
  kp.seed = derive_seed(seed, kSaltBootstrap);
  std::vector<MetricKind> kdq_metrics, pca_metrics;
  for (const auto& d : config.detectors) {
    if (d.group != DetectorGroup::DDB) continue;
    if (d.ddb == DdbVariant::KDQ) kdq_metrics.push_back(d.metric);
    if (d.ddb == DdbVariant::PCA_KDQ) pca_metrics.push_back(d.metric);
  }
  std::vector<KdqDetector> kdq;
  std::vector<PcaKdqDetector> pca;
  if (!kdq_metrics.empty()) kdq = KdqDetector::fit_all(ref, kdq_metrics, kp);
  if (!pca_metrics.empty()) pca = PcaKdqDetector::fit_all(ref, pca_metrics, PcaKdqParams{kp, config.settings.pca_retained});

  std::size_t next_kdq = 0, next_pca = 0;
  for (std::size_t i = 0; i < config.detectors.size(); ++i) {
    const auto& d = config.detectors[i];
    if (d.group != DetectorGroup::DDB) continue;
    if (d.ddb == DdbVariant::EDE) {
      const auto ede = EdeDetector::fit(ref, d.test, config.settings.ede_alpha);
      for (std::size_t b = 0; b < n_batches; ++b) decisions[i][b] = ede.decide(batches[b]);
    } else if (d.ddb == DdbVariant::KDQ) {
      const auto& det = kdq[next_kdq++];
      for (std::size_t b = 0; b < n_batches; ++b) decisions[i][b] = det.decide(batches[b]);
    } else {
      const auto& det = pca[next_pca++];
      for (std::size_t b = 0; b < n_batches; ++b) decisions[i][b] = det.decide(batches[b]);
    }
  }

  std::vector<RunReport> out;
  out.reserve(config.detectors.size());
  for (std::size_t i = 0; i < config.detectors.size(); ++i) {
    RunReport r;
    r.detector = config.detectors[i].id();
    r.group = config.detectors[i].group == DetectorGroup::ERB ? "ERB" : "DDB";
    r.dataset = config.dataset.name;
    r.condition = config.condition.label();
    r.seed = seed;
    r.decisions = std::move(decisions[i]);
    r.drift_batch = m.drift_batch;
    score(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RunReport> run_experiment(const ExperimentConfig& config) {
  if (config.detectors.empty()) throw ConfigError("no detectors selected");
  if (config.seeds.empty()) throw ConfigError("no seeds selected");
  const auto& src = config.dataset;
  std::optional<Dataset> fixed;
  if (!src.synthetic) {
    if (src.real) {
      fixed = load_real_dataset(*src.real, src.csv, src.schema ? std::optional<Schema>(read_schema(*src.schema))
                                                               : std::nullopt);
    } else if (src.manifest) {
      fixed = load_dataset(src.csv, *src.manifest, src.schema);
    } else {
      throw ConfigError("dataset '" + src.name + "' is neither synthetic, real, nor manifest-backed");
    }
  }

  std::vector<std::vector<RunReport>> per_seed(config.seeds.size());
  std::vector<std::exception_ptr> errors(config.seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      try {
        const auto seed = config.seeds[i];
        if (fixed) {
          per_seed[i] = run_on_dataset(*fixed, config, seed);
        } else {
          per_seed[i] = run_on_dataset(synthesize(*src.synthetic, config.condition, seed), config, seed);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, config.seeds.size());
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<RunReport> out;
  for (auto& runs : per_seed) {
    for (auto& r : runs) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- sweeps

namespace {

SweepPoint run_point(const ExperimentConfig& base, const Condition& c) {
  ExperimentConfig cfg = base;
  cfg.condition = c;
  SweepPoint p;
  p.condition = c;
  p.runs = run_experiment(cfg);
  p.aggregates = aggregate(p.runs);
  filter_by_mdp(p.aggregates);
  return p;
}

}  // namespace

std::vector<SweepPoint> sweep_widths(const ExperimentConfig& base, std::span<const std::size_t> widths) {
  std::vector<SweepPoint> out;
  for (auto w : widths) {
    Condition c = base.condition;
    c.drift = DriftKind::gradual;
    c.width = w;
    out.push_back(run_point(base, c));
  }
  return out;
}

std::vector<SweepPoint> sweep_noise(const ExperimentConfig& base, std::span<const double> levels) {
  std::vector<SweepPoint> out;
  for (auto n : levels) {
    Condition c = base.condition;
    c.noise = n;
    out.push_back(run_point(base, c));
  }
  return out;
}

std::vector<SweepPoint> sweep_imbalance(const ExperimentConfig& base) {
  std::vector<SweepPoint> out;
  for (auto imb : {Imbalance::balanced, Imbalance::ratio_1_2}) {
    Condition c = base.condition;
    c.imbalance = imb;
    out.push_back(run_point(base, c));
  }
  return out;
}

std::vector<DetectorSpec> retained_detectors(std::span<const AggregateReport> abrupt,
                                             std::span<const DetectorSpec> candidates) {
  std::vector<DetectorSpec> out;
  for (const auto& d : candidates) {
    const auto id = d.id();
    const auto it = std::find_if(abrupt.begin(), abrupt.end(), [&](const AggregateReport& a) { return a.detector == id; });
    if (it != abrupt.end() && !it->excluded) out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------- config

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  try {
    const auto j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const char* kKeys[] = {"dataset", "detectors", "metrics", "classifiers", "seeds", "drift",
                                  "width", "ramp", "noise", "imbalance", "kdq", "ede_alpha",
                                  "pca_retained", "smote", "smote_k", "jobs"};
    for (const auto& [key, value] : j.items()) {
      if (std::none_of(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return key == k; })) {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }

    // dataset
    const json ds = j.contains("dataset") ? j.at("dataset") : json("SEA");
    const json obj = ds.is_string() ? json{{"name", ds}} : ds;
    cfg.dataset.name = obj.at("name").get<std::string>();
    if (auto preset = synthetic_preset(cfg.dataset.name)) {
      preset->reference_rows = get_or(obj, "reference_rows", preset->reference_rows);
      preset->batch_rows = get_or(obj, "batch_rows", preset->batch_rows);
      preset->batch_count = get_or(obj, "batch_count", preset->batch_count);
      preset->drift_batch = get_or(obj, "drift_batch", preset->drift_batch);
      if (obj.contains("concepts")) {
        const auto pair = obj.at("concepts").get<std::vector<int>>();
        if (pair.size() != 2) throw ConfigError("'concepts' must be [before, after]");
        preset->concept_before = pair[0];
        preset->concept_after = pair[1];
      }
      if (preset->drift_batch >= preset->batch_count) throw ConfigError("drift_batch must be below batch_count");
      cfg.dataset.synthetic = preset;
    } else if (auto real = parse_real_dataset(cfg.dataset.name)) {
      cfg.dataset.real = real;
      cfg.dataset.csv = obj.at("path").get<std::string>();
    } else if (obj.contains("manifest")) {
      cfg.dataset.csv = obj.at("csv").get<std::string>();
      cfg.dataset.manifest = obj.at("manifest").get<std::string>();
    } else {
      throw ConfigError("unknown dataset '" + cfg.dataset.name + "'");
    }
    if (obj.contains("schema")) cfg.dataset.schema = obj.at("schema").get<std::string>();

    // detectors
    std::vector<MetricKind> metrics(kAllMetrics.begin(), kAllMetrics.end());
    if (j.contains("metrics")) {
      metrics.clear();
      for (const auto& s : j.at("metrics").get<std::vector<std::string>>()) {
        const auto m = parse_metric(s);
        if (!m) throw ConfigError("unknown metric '" + s + "'");
        metrics.push_back(*m);
      }
    }
    std::vector<ClassifierKind> classifiers{ClassifierKind::NaiveBayes, ClassifierKind::AdaBoost};
    if (j.contains("classifiers")) {
      classifiers.clear();
      for (const auto& s : j.at("classifiers").get<std::vector<std::string>>()) {
        const auto c = parse_classifier(s);
        if (!c) throw ConfigError("unknown classifier '" + s + "'");
        classifiers.push_back(*c);
      }
    }
    const auto names = get_or(j, "detectors", std::vector<std::string>{"all"});
    cfg.detectors = expand_detectors(names, metrics, classifiers);

    // seeds: a list, or a count meaning 0..n-1
    if (!j.contains("seeds")) {
      for (std::uint64_t s = 0; s < 10; ++s) cfg.seeds.push_back(s);
    } else if (j.at("seeds").is_number_integer()) {
      const auto n = j.at("seeds").get<std::uint64_t>();
      for (std::uint64_t s = 0; s < n; ++s) cfg.seeds.push_back(s);
    } else {
      cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }

    const auto drift = get_or<std::string>(j, "drift", j.contains("width") ? "gradual" : "abrupt");
    if (drift != "abrupt" && drift != "gradual") throw ConfigError("drift must be 'abrupt' or 'gradual'");
    cfg.condition.drift = drift == "abrupt" ? DriftKind::abrupt : DriftKind::gradual;
    cfg.condition.width = get_or<std::size_t>(j, "width", 0);
    if (cfg.condition.drift == DriftKind::gradual && cfg.condition.width == 0) {
      throw ConfigError("gradual drift needs a positive width");
    }
    const auto ramp = parse_ramp(get_or<std::string>(j, "ramp", "linear"));
    if (!ramp) throw ConfigError("ramp must be 'linear' or 'sigmoid'");
    cfg.condition.ramp = *ramp;
    cfg.condition.noise = get_or(j, "noise", 0.0);
    if (cfg.condition.noise < 0.0 || cfg.condition.noise >= 1.0) throw ConfigError("noise must lie in [0, 1)");
    cfg.condition.imbalance = get_or(j, "imbalance", false) ? Imbalance::ratio_1_2 : Imbalance::balanced;

    if (j.contains("kdq")) {
      const auto& k = j.at("kdq");
      cfg.settings.tree.max_leaf_count = get_or(k, "max_leaf_count", cfg.settings.tree.max_leaf_count);
      cfg.settings.tree.min_side = get_or(k, "min_side", cfg.settings.tree.min_side);
      cfg.settings.replicates = get_or(k, "replicates", cfg.settings.replicates);
    }
    cfg.settings.ede_alpha = get_or(j, "ede_alpha", cfg.settings.ede_alpha);
    cfg.settings.pca_retained = get_or(j, "pca_retained", cfg.settings.pca_retained);
    cfg.settings.smote_k = get_or(j, "smote_k", cfg.settings.smote_k);
    if (j.contains("smote")) cfg.smote = j.at("smote").get<bool>();
    cfg.jobs = get_or<std::size_t>(j, "jobs", 1);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace driftbench
