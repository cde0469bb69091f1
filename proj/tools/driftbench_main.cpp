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

// driftbench command line: generate | run | sweep | report.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "driftbench/error.hpp"
#include "driftbench/harness.hpp"
#include "driftbench/ingest.hpp"
#include "driftbench/report.hpp"

namespace fs = std::filesystem;
using namespace driftbench;

namespace {

struct Flags {
  std::string config;
  std::string dataset = "SEA";
  std::string data;  // CSV path for real or manifest-backed datasets
  std::string manifest;
  std::string schema;
  std::string seeds;
  std::string out = "driftbench-out";
  std::vector<std::string> detectors;
  std::vector<std::string> metrics;
  std::vector<std::string> classifiers;
  std::size_t width = 0;
  std::string ramp;
  double noise = -1.0;
  bool imbalance = false;
  std::size_t jobs = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> datasets;
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "10" -> 0..9, "3-7" -> 3..7, "1,4,9" -> {1,4,9}.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  try {
    if (text.find_first_of(",-") == std::string::npos) {
      const auto n = std::stoull(text);
      for (std::uint64_t s = 0; s < n; ++s) out.push_back(s);
      return out;
    }
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (const auto dash = part.find('-'); dash != std::string::npos) {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw ConfigError("empty seed range '" + part + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      } else {
        out.push_back(std::stoull(part));
      }
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse seeds '" + text + "'");
  }
  return out;
}

std::vector<MetricKind> metrics_of(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllMetrics.begin(), kAllMetrics.end()};
  std::vector<MetricKind> out;
  for (const auto& n : names) {
    const auto m = parse_metric(n);
    if (!m) throw ConfigError("unknown metric '" + n + "'");
    out.push_back(*m);
  }
  return out;
}

std::vector<ClassifierKind> classifiers_of(const std::vector<std::string>& names) {
  if (names.empty()) return {ClassifierKind::NaiveBayes, ClassifierKind::AdaBoost};
  std::vector<ClassifierKind> out;
  for (const auto& n : names) {
    const auto c = parse_classifier(n);
    if (!c) throw ConfigError("unknown classifier '" + n + "'");
    out.push_back(*c);
  }
  return out;
}

DatasetSource source_of(const std::string& name, const Flags& f) {
  DatasetSource src;
  src.name = name;
  if (auto preset = synthetic_preset(name)) {
    src.synthetic = preset;
  } else if (auto real = parse_real_dataset(name)) {
    if (f.data.empty()) throw ConfigError("dataset " + name + " needs --data <csv>");
    src.real = real;
    src.csv = f.data;
  } else if (!f.manifest.empty()) {
    src.csv = f.data;
    src.manifest = f.manifest;
  } else {
    throw ConfigError("unknown dataset '" + name + "'");
  }
  if (!f.schema.empty()) src.schema = f.schema;
  return src;
}

// Config file first, then any flag the user actually passed.
ExperimentConfig build_config(const Flags& f, const CLI::App& cmd) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    cfg = read_config(f.config);
  } else {
    cfg.detectors = all_detectors();
    for (std::uint64_t s = 0; s < 10; ++s) cfg.seeds.push_back(s);
  }
  if (cmd.count("--dataset") || f.config.empty()) cfg.dataset = source_of(f.dataset, f);
  if (cmd.count("--detectors") || cmd.count("--metric") || cmd.count("--classifier")) {
    const auto names = f.detectors.empty() ? std::vector<std::string>{"all"} : f.detectors;
    cfg.detectors = expand_detectors(names, metrics_of(f.metrics), classifiers_of(f.classifiers));
  }
  if (cmd.count("--seeds")) cfg.seeds = parse_seeds(f.seeds);
  if (cmd.count("--width")) {
    cfg.condition.drift = f.width == 0 ? DriftKind::abrupt : DriftKind::gradual;
    cfg.condition.width = f.width;
  }
  if (cmd.count("--ramp")) {
    const auto r = parse_ramp(f.ramp);
    if (!r) throw ConfigError("ramp must be 'linear' or 'sigmoid'");
    cfg.condition.ramp = *r;
  }
  if (cmd.count("--noise")) cfg.condition.noise = f.noise;
  if (cmd.count("--imbalance")) cfg.condition.imbalance = f.imbalance ? Imbalance::ratio_1_2 : Imbalance::balanced;
  if (cmd.count("--jobs")) cfg.jobs = f.jobs;
  return cfg;
}

void print_aggregates(const std::vector<AggregateReport>& aggs) {
  std::printf("%-10s %-28s %-16s %8s %8s %5s %s\n", "dataset", "condition", "detector", "L", "FPR", "MDP", "");
  auto cell = [](const std::optional<double>& v) {
    char buf[32];
    if (!v) return std::string("ND");
    std::snprintf(buf, sizeof buf, "%.3f", *v);
    return std::string(buf);
  };
  for (const auto& a : aggs) {
    std::printf("%-10s %-28s %-16s %8s %8s %5.2f %s\n", a.dataset.c_str(), a.condition.c_str(), a.detector.c_str(),
                cell(a.mean_latency).c_str(), cell(a.mean_fpr).c_str(), a.mdp, a.excluded ? "excluded" : "");
  }
}

int cmd_generate(const Flags& f, const CLI::App& cmd) {
  const auto preset = synthetic_preset(f.dataset);
  if (!preset) throw ConfigError("generate supports SEA, AGRAW1 and AGRAW2");
  Condition c;
  if (f.width > 0) {
    c.drift = DriftKind::gradual;
    c.width = f.width;
  }
  if (cmd.count("--ramp")) c.ramp = parse_ramp(f.ramp).value_or(RampShape::linear);
  if (f.noise > 0) c.noise = f.noise;
  if (f.imbalance) c.imbalance = Imbalance::ratio_1_2;
  const auto seeds = f.seeds.empty() ? std::vector<std::uint64_t>{0} : parse_seeds(f.seeds);
  for (auto seed : seeds) {
    const auto d = synthesize(*preset, c, seed);
    const std::string stem = f.dataset + "_seed" + std::to_string(seed);
    const fs::path base = fs::path(f.out) / stem;
    write_csv(base.string() + ".csv", d.data);
    write_manifest(base.string() + ".manifest.json", d.manifest);
    Schema schema;
    for (const auto& col : d.manifest.columns) {
      if (col.kind == ColumnKind::categorical) schema.categorical.push_back(col.name);
    }
    write_text(base.string() + ".schema.json", to_json(schema) + "\n");
    std::cout << "wrote " << base.string() << ".{csv,manifest.json,schema.json}  (" << d.data.labels.size()
              << " rows)\n";
  }
  return 0;
}

int cmd_run(const Flags& f, const CLI::App& cmd) {
  const auto cfg = build_config(f, cmd);
  const auto t0 = std::chrono::steady_clock::now();
  const auto runs = run_experiment(cfg);
  auto aggs = aggregate(runs);
  filter_by_mdp(aggs);
  const fs::path out(f.out);
  write_text(out / "runs.json", runs_to_json(runs) + "\n");
  write_text(out / "aggregates.csv", aggregates_to_csv(aggs));
  write_text(out / "summary.csv", summary_table_csv(aggs));
  print_aggregates(aggs);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << runs.size() << " runs in " << secs << " s; results in " << out.string() << "\n";
  return 0;
}

int cmd_sweep(const Flags& f, const CLI::App& cmd) {
  ExperimentConfig base = build_config(f, cmd);
  const auto names = f.datasets.empty() ? std::vector<std::string>{"SEA", "AGRAW1", "AGRAW2"} : f.datasets;
  const fs::path out(f.out);
  std::vector<RunReport> all_runs;
  std::vector<AggregateReport> abrupt_all, width_all, noise_all, imbalance_all;
  std::vector<SweepPoint> width_points;
  for (const auto& name : names) {
    ExperimentConfig cfg = base;
    cfg.dataset = source_of(name, f);
    cfg.condition = Condition{};
    auto runs = run_experiment(cfg);
    auto aggs = aggregate(runs);
    filter_by_mdp(aggs);
    all_runs.insert(all_runs.end(), runs.begin(), runs.end());
    abrupt_all.insert(abrupt_all.end(), aggs.begin(), aggs.end());
    cfg.detectors = retained_detectors(aggs, cfg.detectors);
    std::cout << name << ": " << cfg.detectors.size() << " detectors retained after the abrupt run\n";
    if (cfg.detectors.empty() || !cfg.dataset.synthetic) continue;

    auto keep = [&](const std::vector<SweepPoint>& pts, std::vector<AggregateReport>& sink) {
      for (const auto& p : pts) {
        all_runs.insert(all_runs.end(), p.runs.begin(), p.runs.end());
        sink.insert(sink.end(), p.aggregates.begin(), p.aggregates.end());
      }
    };
    auto widths = sweep_widths(cfg, kPaperWidths);
    keep(widths, width_all);
    width_points.insert(width_points.end(), widths.begin(), widths.end());
    const double noise_levels[] = {0.1, 0.2};
    keep(sweep_noise(cfg, noise_levels), noise_all);
    ExperimentConfig imb = cfg;
    imb.condition.imbalance = Imbalance::ratio_1_2;
    auto imb_runs = run_experiment(imb);
    auto imb_aggs = aggregate(imb_runs);
    filter_by_mdp(imb_aggs);
    all_runs.insert(all_runs.end(), imb_runs.begin(), imb_runs.end());
    imbalance_all.insert(imbalance_all.end(), imb_aggs.begin(), imb_aggs.end());
  }
  write_text(out / "runs.json", runs_to_json(all_runs) + "\n");
  write_text(out / "abrupt.csv", aggregates_to_csv(abrupt_all));
  write_text(out / "abrupt_summary.csv", summary_table_csv(abrupt_all));
  write_text(out / "widths.csv", aggregates_to_csv(width_all));
  write_text(out / "widths_plot.csv", width_plot_csv(width_points));
  write_text(out / "noise.csv", aggregates_to_csv(noise_all));
  write_text(out / "imbalance.csv", aggregates_to_csv(imbalance_all));
  print_aggregates(abrupt_all);
  std::cout << "results in " << out.string() << "\n";
  return 0;
}

int cmd_report(const Flags& f) {
  if (f.inputs.empty()) throw ConfigError("report needs --in <runs.json>");
  std::vector<RunReport> runs;
  for (const auto& in : f.inputs) {
    auto part = runs_from_json(read_text(in));
    runs.insert(runs.end(), part.begin(), part.end());
  }
  auto aggs = aggregate(runs);
  filter_by_mdp(aggs);
  const fs::path out(f.out);
  write_text(out / "aggregates.csv", aggregates_to_csv(aggs));
  write_text(out / "summary.csv", summary_table_csv(aggs));
  print_aggregates(aggs);
  return 0;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--dataset", f.dataset, "SEA, AGRAW1, AGRAW2, ELECT2, Airlines or a manifest-backed name");
  cmd->add_option("--data", f.data, "CSV file for real or manifest-backed datasets");
  cmd->add_option("--manifest", f.manifest, "dataset manifest (JSON)");
  cmd->add_option("--schema", f.schema, "schema sidecar (JSON)");
  cmd->add_option("--seeds", f.seeds, "N (0..N-1), a-b, or a,b,c");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--detectors", f.detectors, "ids or groups: ADWIN+NB, kdqTrees, EDE, ERB, DDB, all")->delimiter(',');
  cmd->add_option("--metric", f.metrics, "kdq metrics: KL,MH,CBS,KLS,COS,SE,BTC")->delimiter(',');
  cmd->add_option("--classifier", f.classifiers, "NB, ADB")->delimiter(',');
  cmd->add_option("--width", f.width, "gradual drift width in samples (0 = abrupt)");
  cmd->add_option("--ramp", f.ramp, "gradual ramp: linear or sigmoid");
  cmd->add_option("--noise", f.noise, "label noise fraction")->check(CLI::Range(0.0, 0.999));
  cmd->add_flag("--imbalance", f.imbalance, "subsample the minority class to 1:2");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driftbench: concept-drift detectors and batch-stream benchmark"};
  app.require_subcommand(1);
  Flags f;
  auto* gen = app.add_subcommand("generate", "write synthetic datasets with manifests");
  auto* run = app.add_subcommand("run", "run one experiment configuration");
  auto* sweep = app.add_subcommand("sweep", "abrupt run, MDP filter, then width/noise/imbalance sweeps");
  auto* rep = app.add_subcommand("report", "aggregate run records into tables");
  for (auto* c : {gen, run, sweep}) add_common(c, f);
  sweep->add_option("--datasets", f.datasets, "datasets to sweep (default SEA,AGRAW1,AGRAW2)")->delimiter(',');
  rep->add_option("--in", f.inputs, "runs.json files")->required();
  rep->add_option("--out", f.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (*gen) return cmd_generate(f, *gen);
    if (*run) return cmd_run(f, *run);
    if (*sweep) return cmd_sweep(f, *sweep);
    if (*rep) return cmd_report(f);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
