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

// CSV + JSON-sidecar ingestion and the dataset manifest that fixes the
// reference / batch layout of an experiment.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "driftbench/datagen.hpp"
#include "driftbench/table.hpp"

namespace driftbench {

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Headered, comma-separated, double-quote escaped. A row whose field count
/// differs from the header throws ParseError naming the 1-based line.
CsvData read_csv(const std::filesystem::path& path);
CsvData parse_csv(std::string_view text);

/// Schema sidecar: {"categorical": [...], "drop": [...], "label": "<col>"}.
/// An empty label means the last column.
struct Schema {
  std::vector<std::string> categorical;
  std::vector<std::string> drop;
  std::string label;
};

Schema parse_schema(std::string_view json_text);
Schema read_schema(const std::filesystem::path& path);
std::string to_json(const Schema& schema);

struct LabeledTable {
  RawTable features;
  std::vector<int> labels;
  std::vector<std::string> label_names;  // label_names[k] is the text of class k
};

/// Applies the schema to parsed CSV. Rows with an empty or "?" cell are
/// dropped; a non-numeric value in a numeric column throws ParseError.
/// Labels map to 0/1 in lexicographic order of their text.
LabeledTable to_labeled_table(const CsvData& csv, const Schema& schema);

struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const RowRange&, const RowRange&) = default;
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

struct DatasetManifest {
  std::string name;
  RowRange reference;
  std::vector<RowRange> batches;
  std::size_t drift_batch = 0;
  std::vector<ColumnSpec> columns;
  std::vector<std::string> notes;
  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

/// Throws SchemaError unless reference and batches are ordered, disjoint and
/// the drift batch exists.
void validate(const DatasetManifest& manifest, std::size_t table_rows);

std::string to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(std::string_view json_text);
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& path);

/// Writes feature columns then the label column.
void write_csv(const std::filesystem::path& path, const LabeledTable& table);

struct Dataset {
  LabeledTable data;
  DatasetManifest manifest;
};

/// Lays a generated stream out as reference + equal batches so that the
/// stream's drift index is the first row of batch `drift_batch`.
Dataset layout_stream(const LabeledStream& stream, std::string name, std::size_t reference_rows,
                      std::size_t batch_rows, std::size_t batch_count, std::size_t drift_batch);

enum class RealDatasetKind { ELECT2, Airlines };
std::optional<RealDatasetKind> parse_real_dataset(std::string_view name) noexcept;
std::string_view to_string(RealDatasetKind kind) noexcept;

/// Default sidecar for a real dataset if none is supplied.
Schema default_schema(RealDatasetKind kind);

/// ELECT2: reference 1996-05-07..1997-04-15, then complete 7-day batches.
/// Airlines: second week only; reference Monday+Tuesday, then one batch per
/// day Wednesday..Sunday. Rows outside the layout are discarded and the
/// manifest ranges index the returned table.
Dataset load_real_dataset(RealDatasetKind kind, const std::filesystem::path& csv_path,
                          const std::optional<Schema>& schema = std::nullopt);

/// ELECT2 layout from per-row calendar days (days since 1970-01-01).
DatasetManifest elect2_layout(const std::vector<long>& row_days);
/// Airlines layout from per-row day-of-week values (1 = Monday).
DatasetManifest airlines_layout(const std::vector<int>& day_of_week);

/// Generic dataset: CSV + schema sidecar + manifest.
Dataset load_dataset(const std::filesystem::path& csv_path, const std::filesystem::path& manifest_path,
                     const std::optional<std::filesystem::path>& schema_path = std::nullopt);

}  // namespace driftbench
