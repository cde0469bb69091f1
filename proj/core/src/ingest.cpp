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

#include "driftbench/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/tokenizer.hpp>
#include <nlohmann/json.hpp>

#include "driftbench/error.hpp"

namespace driftbench {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::optional<double> parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool missing(const std::string& cell) { return cell.empty() || cell == "?"; }

std::size_t drop_incomplete(CsvData& csv) {
  const auto before = csv.rows.size();
  std::erase_if(csv.rows, [](const auto& row) { return std::any_of(row.begin(), row.end(), missing); });
  return before - csv.rows.size();
}

std::optional<std::size_t> header_index(const CsvData& csv, std::string_view name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    const auto& h = csv.header[i];
    if (h.size() == name.size() &&
        std::equal(h.begin(), h.end(), name.begin(), [](char a, char b) { return std::tolower(a) == std::tolower(b); })) {
      return i;
    }
  }
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Backslash escapes, matching the reader's separator.
std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\\") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

using std::chrono::days;
using std::chrono::sys_days;
using std::chrono::year;

long day_number(int y, unsigned m, unsigned d) {
  const sys_days sd = year{y} / std::chrono::month{m} / std::chrono::day{d};
  return sd.time_since_epoch().count();
}

// Accepts yymmdd, yyyymmdd or yyyy-mm-dd; anything else is not a date.
std::optional<long> parse_date(const std::string& cell) {
  int y = 0;
  unsigned m = 0, d = 0;
  if (cell.size() == 10 && cell[4] == '-' && cell[7] == '-') {
    y = std::stoi(cell.substr(0, 4));
    m = static_cast<unsigned>(std::stoi(cell.substr(5, 2)));
    d = static_cast<unsigned>(std::stoi(cell.substr(8, 2)));
  } else {
    const auto v = parse_double(cell);
    if (!v || *v != std::floor(*v) || *v < 100101) return std::nullopt;
    const auto n = static_cast<long>(*v);
    if (n < 1000000) {
      y = static_cast<int>(n / 10000);
      y += y >= 70 ? 1900 : 2000;
    } else {
      y = static_cast<int>(n / 10000);
    }
    m = static_cast<unsigned>((n / 100) % 100);
    d = static_cast<unsigned>(n % 100);
  }
  const std::chrono::year_month_day ymd{year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd}.time_since_epoch().count();
}

const long kElectStart = day_number(1996, 5, 7);
const long kElectReferenceLast = day_number(1997, 4, 15);
const long kElectDriftDay = day_number(1997, 5, 2);

}  // namespace

// ---------------------------------------------------------------- CSV

CsvData parse_csv(std::string_view text) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  const boost::escaped_list_separator<char> sep('\\', ',', '"');
  CsvData out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    try {
      Tokenizer tok(line, sep);
      for (const auto& f : tok) fields.push_back(f);
    } catch (const boost::escaped_list_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    for (auto& f : fields) {
      while (!f.empty() && f.front() == ' ') f.erase(f.begin());
      while (!f.empty() && f.back() == ' ') f.pop_back();
    }
    if (out.header.empty()) {
      out.header = std::move(fields);
      continue;
    }
    if (fields.size() != out.header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(out.header.size()) +
                       " fields, found " + std::to_string(fields.size()));
    }
    out.rows.push_back(std::move(fields));
  }
  if (out.header.empty()) throw ParseError("CSV input has no header");
  return out;
}

CsvData read_csv(const fs::path& path) { return parse_csv(read_file(path)); }

// ---------------------------------------------------------------- schema

Schema parse_schema(std::string_view json_text) {
  Schema s;
  try {
    const auto j = json::parse(json_text);
    if (!j.is_object()) throw SchemaError("schema must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "categorical") s.categorical = value.get<std::vector<std::string>>();
      else if (key == "drop") s.drop = value.get<std::vector<std::string>>();
      else if (key == "label") s.label = value.get<std::string>();
      else throw SchemaError("unknown schema key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed schema: ") + e.what());
  }
  return s;
}

Schema read_schema(const fs::path& path) { return parse_schema(read_file(path)); }

std::string to_json(const Schema& schema) {
  return json{{"categorical", schema.categorical}, {"drop", schema.drop}, {"label", schema.label}}.dump(2);
}

LabeledTable to_labeled_table(const CsvData& csv, const Schema& schema) {
  if (csv.header.empty()) throw SchemaError("CSV has no columns");
  const std::size_t label_col = schema.label.empty() ? csv.header.size() - 1 : [&] {
    const auto idx = header_index(csv, schema.label);
    if (!idx) throw SchemaError("label column '" + schema.label + "' not in header");
    return *idx;
  }();
  for (const auto& name : schema.categorical) {
    if (!header_index(csv, name)) throw SchemaError("categorical column '" + name + "' not in header");
  }
  std::set<std::size_t> dropped;
  for (const auto& name : schema.drop) {
    const auto idx = header_index(csv, name);
    if (!idx) throw SchemaError("drop column '" + name + "' not in header");
    dropped.insert(*idx);
  }
  std::set<std::size_t> categorical;
  for (const auto& name : schema.categorical) categorical.insert(*header_index(csv, name));

  std::vector<std::size_t> kept_rows;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    if (std::none_of(csv.rows[r].begin(), csv.rows[r].end(), missing)) kept_rows.push_back(r);
  }

  LabeledTable out;
  for (std::size_t c = 0; c < csv.header.size(); ++c) {
    if (c == label_col || dropped.count(c)) continue;
    if (categorical.count(c)) {
      std::vector<std::string> v;
      v.reserve(kept_rows.size());
      for (auto r : kept_rows) v.push_back(csv.rows[r][c]);
      out.features.add_categorical(csv.header[c], std::move(v));
    } else {
      std::vector<double> v;
      v.reserve(kept_rows.size());
      for (auto r : kept_rows) {
        const auto x = parse_double(csv.rows[r][c]);
        if (!x) {
          throw ParseError("row " + std::to_string(r + 1) + ": column '" + csv.header[c] + "' value '" +
                           csv.rows[r][c] + "' is not numeric");
        }
        v.push_back(*x);
      }
      out.features.add_numeric(csv.header[c], std::move(v));
    }
  }
  std::set<std::string> names;
  for (auto r : kept_rows) names.insert(csv.rows[r][label_col]);
  if (names.size() > 2) throw SchemaError("label column has more than two distinct values");
  out.label_names.assign(names.begin(), names.end());
  out.labels.reserve(kept_rows.size());
  for (auto r : kept_rows) {
    out.labels.push_back(csv.rows[r][label_col] == out.label_names.front() ? 0 : 1);
  }
  return out;
}

// ---------------------------------------------------------------- manifest

void validate(const DatasetManifest& m, std::size_t table_rows) {
  if (m.reference.begin >= m.reference.end) throw SchemaError("manifest reference range is empty");
  if (m.batches.empty()) throw SchemaError("manifest has no batches");
  std::size_t cursor = m.reference.end;
  for (std::size_t i = 0; i < m.batches.size(); ++i) {
    const auto& b = m.batches[i];
    if (b.begin < cursor || b.begin >= b.end) {
      throw SchemaError("manifest batch " + std::to_string(i) + " is empty, out of order or overlapping");
    }
    cursor = b.end;
  }
  if (cursor > table_rows) throw SchemaError("manifest ranges exceed the data");
  if (m.drift_batch >= m.batches.size()) throw SchemaError("manifest drift batch does not exist");
}

std::string to_json(const DatasetManifest& m) {
  json batches = json::array();
  for (const auto& b : m.batches) batches.push_back({b.begin, b.end});
  json columns = json::array();
  for (const auto& c : m.columns) columns.push_back({{"name", c.name}, {"kind", std::string(to_string(c.kind))}});
  const json j{{"name", m.name},
               {"reference", {m.reference.begin, m.reference.end}},
               {"batches", batches},
               {"drift_batch", m.drift_batch},
               {"columns", columns},
               {"notes", m.notes}};
  return j.dump(2);
}

DatasetManifest manifest_from_json(std::string_view text) {
  DatasetManifest m;
  try {
    const auto j = json::parse(text);
    m.name = j.at("name").get<std::string>();
    const auto ref = j.at("reference").get<std::vector<std::size_t>>();
    if (ref.size() != 2) throw SchemaError("manifest reference must be [begin, end]");
    m.reference = {ref[0], ref[1]};
    for (const auto& b : j.at("batches")) {
      const auto r = b.get<std::vector<std::size_t>>();
      if (r.size() != 2) throw SchemaError("manifest batch must be [begin, end]");
      m.batches.push_back({r[0], r[1]});
    }
    m.drift_batch = j.at("drift_batch").get<std::size_t>();
    for (const auto& c : j.value("columns", json::array())) {
      const auto kind = c.at("kind").get<std::string>();
      if (kind != "numeric" && kind != "categorical") throw SchemaError("unknown column kind '" + kind + "'");
      m.columns.push_back({c.at("name").get<std::string>(), kind == "numeric" ? ColumnKind::numeric : ColumnKind::categorical});
    }
    m.notes = j.value("notes", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const fs::path& path, const DatasetManifest& m) { write_file(path, to_json(m) + "\n"); }

DatasetManifest read_manifest(const fs::path& path) { return manifest_from_json(read_file(path)); }

void write_csv(const fs::path& path, const LabeledTable& t) {
  std::string out;
  const auto& cols = t.features.columns();
  for (const auto& c : cols) out += quote_csv(c.name) + ",";
  out += "label\n";
  for (std::size_t r = 0; r < t.features.rows(); ++r) {
    for (const auto& c : cols) {
      out += c.kind == ColumnKind::numeric ? format_double(c.numbers[r]) : quote_csv(c.categories[r]);
      out += ',';
    }
    const int y = t.labels[r];
    out += t.label_names.size() == 2 ? quote_csv(t.label_names[static_cast<std::size_t>(y)]) : std::to_string(y);
    out += '\n';
  }
  write_file(path, out);
}

namespace {

std::vector<ColumnSpec> column_specs(const RawTable& t) {
  std::vector<ColumnSpec> out;
  for (const auto& c : t.columns()) out.push_back({c.name, c.kind});
  return out;
}

}  // namespace

Dataset layout_stream(const LabeledStream& stream, std::string name, std::size_t reference_rows,
                      std::size_t batch_rows, std::size_t batch_count, std::size_t drift_batch) {
  if (batch_rows == 0 || batch_count == 0 || reference_rows == 0) throw ParameterError("layout sizes must be positive");
  if (drift_batch >= batch_count) throw ParameterError("drift batch beyond the batch count");
  const std::size_t lead = reference_rows + drift_batch * batch_rows;
  if (stream.drift_index < lead) throw InsufficientDataError("stream has too few rows before the drift");
  const std::size_t start = stream.drift_index - lead;
  const std::size_t end = start + reference_rows + batch_count * batch_rows;
  if (end > stream.labels.size()) throw InsufficientDataError("stream has too few rows after the drift");

  Dataset d;
  d.data.features = stream.features.slice(start, end);
  d.data.labels.assign(stream.labels.begin() + static_cast<std::ptrdiff_t>(start),
                       stream.labels.begin() + static_cast<std::ptrdiff_t>(end));
  d.data.label_names = {"0", "1"};
  d.manifest.name = std::move(name);
  d.manifest.reference = {0, reference_rows};
  for (std::size_t b = 0; b < batch_count; ++b) {
    const std::size_t lo = reference_rows + b * batch_rows;
    d.manifest.batches.push_back({lo, lo + batch_rows});
  }
  d.manifest.drift_batch = drift_batch;
  d.manifest.columns = column_specs(d.data.features);
  return d;
}

// ---------------------------------------------------------------- real data

std::optional<RealDatasetKind> parse_real_dataset(std::string_view name) noexcept {
  if (name == "ELECT2" || name == "elect2") return RealDatasetKind::ELECT2;
  if (name == "Airlines" || name == "airlines" || name == "AIRLINES") return RealDatasetKind::Airlines;
  return std::nullopt;
}

std::string_view to_string(RealDatasetKind kind) noexcept {
  return kind == RealDatasetKind::ELECT2 ? "ELECT2" : "Airlines";
}

Schema default_schema(RealDatasetKind kind) {
  if (kind == RealDatasetKind::ELECT2) return Schema{{}, {"date"}, ""};
  return Schema{{"Airline", "AirportFrom", "AirportTo"}, {"DayOfWeek"}, ""};
}

DatasetManifest elect2_layout(const std::vector<long>& row_days) {
  DatasetManifest m;
  m.name = "ELECT2";
  if (row_days.empty()) throw InsufficientDataError("ELECT2 file has no rows");
  if (!std::is_sorted(row_days.begin(), row_days.end())) throw ParseError("ELECT2 rows are not in date order");
  const auto first_at = [&](long day) {
    return static_cast<std::size_t>(std::lower_bound(row_days.begin(), row_days.end(), day) - row_days.begin());
  };
  m.reference = {first_at(kElectStart), first_at(kElectReferenceLast + 1)};
  if (m.reference.size() == 0) throw InsufficientDataError("ELECT2 file has no reference rows");
  const long last_day = row_days.back();
  for (long start = kElectReferenceLast + 1; start + 6 <= last_day; start += 7) {
    m.batches.push_back({first_at(start), first_at(start + 7)});
  }
  if (m.batches.empty()) throw InsufficientDataError("ELECT2 file has no complete test week");
  m.drift_batch = static_cast<std::size_t>((kElectDriftDay - (kElectReferenceLast + 1)) / 7);
  m.notes.push_back("weekly batches start the day after the reference; incomplete trailing week dropped");
  return m;
}

DatasetManifest airlines_layout(const std::vector<int>& dow) {
  DatasetManifest m;
  m.name = "Airlines";
  std::size_t week_start = 0;
  std::size_t week = 0;
  std::size_t i = 1;
  for (; i < dow.size() && week < 1; ++i) {
    if (dow[i] < dow[i - 1]) {
      ++week;
      week_start = i;
    }
  }
  if (week < 1) throw InsufficientDataError("Airlines file does not reach a second week");
  std::size_t week_end = week_start + 1;
  while (week_end < dow.size() && dow[week_end] >= dow[week_end - 1]) ++week_end;

  RowRange day[8];
  for (std::size_t r = week_start; r < week_end; ++r) {
    const int d = dow[r];
    if (d < 1 || d > 7) throw ParseError("row " + std::to_string(r + 1) + ": DayOfWeek outside 1..7");
    auto& range = day[d];
    if (range.size() == 0) range = {r, r + 1};
    else range.end = r + 1;
  }
  for (int d = 1; d <= 7; ++d) {
    if (day[d].size() == 0) throw InsufficientDataError("second Airlines week lacks day " + std::to_string(d));
  }
  m.reference = {day[1].begin, day[2].end};
  for (int d = 3; d <= 7; ++d) m.batches.push_back(day[d]);
  m.drift_batch = 2;
  m.notes.push_back("second week only; reference Monday+Tuesday; one batch per day Wednesday..Sunday");
  return m;
}

namespace {

Dataset restrict(LabeledTable table, DatasetManifest m) {
  const std::size_t lo = m.reference.begin;
  const std::size_t hi = m.batches.back().end;
  Dataset d;
  d.data.features = table.features.slice(lo, hi);
  d.data.labels.assign(table.labels.begin() + static_cast<std::ptrdiff_t>(lo),
                       table.labels.begin() + static_cast<std::ptrdiff_t>(hi));
  d.data.label_names = std::move(table.label_names);
  m.reference = {m.reference.begin - lo, m.reference.end - lo};
  for (auto& b : m.batches) b = {b.begin - lo, b.end - lo};
  m.columns = column_specs(d.data.features);
  d.manifest = std::move(m);
  validate(d.manifest, d.data.labels.size());
  return d;
}

}  // namespace

Dataset load_real_dataset(RealDatasetKind kind, const fs::path& csv_path, const std::optional<Schema>& schema) {
  if (!fs::exists(csv_path)) {
    const std::string hint = kind == RealDatasetKind::ELECT2
                                 ? "export the electricity (elecNormNew) data as CSV"
                                 : "export the MOA airlines data as CSV";
    throw IoError("dataset file '" + csv_path.string() + "' not found; " + hint + " and pass its path");
  }
  CsvData csv = read_csv(csv_path);
  const std::size_t dropped = drop_incomplete(csv);
  const Schema s = schema.value_or(default_schema(kind));

  DatasetManifest m;
  if (kind == RealDatasetKind::ELECT2) {
    const auto date_col = header_index(csv, "date");
    if (!date_col) throw SchemaError("ELECT2 file lacks a 'date' column");
    std::vector<long> days(csv.rows.size());
    // Calendar dates when the column holds them; otherwise count day changes
    // from the documented first day.
    bool calendar = !csv.rows.empty() && parse_date(csv.rows.front()[*date_col]).has_value();
    long counter = kElectStart;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
      const auto& cell = csv.rows[r][*date_col];
      if (calendar) {
        const auto d = parse_date(cell);
        if (!d) throw ParseError("row " + std::to_string(r + 1) + ": unreadable date '" + cell + "'");
        days[r] = *d;
      } else {
        if (r > 0 && cell != csv.rows[r - 1][*date_col]) ++counter;
        days[r] = counter;
      }
    }
    m = elect2_layout(days);
    if (!calendar) m.notes.push_back("dates reconstructed from day changes starting 1996-05-07");
  } else {
    const auto dow_col = header_index(csv, "DayOfWeek");
    if (!dow_col) throw SchemaError("Airlines file lacks a 'DayOfWeek' column");
    std::vector<int> dow(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
      const auto v = parse_double(csv.rows[r][*dow_col]);
      if (!v) throw ParseError("row " + std::to_string(r + 1) + ": DayOfWeek is not numeric");
      dow[r] = static_cast<int>(*v);
    }
    m = airlines_layout(dow);
  }
  if (dropped > 0) m.notes.push_back(std::to_string(dropped) + " incomplete rows dropped");
  return restrict(to_labeled_table(csv, s), std::move(m));
}

Dataset load_dataset(const fs::path& csv_path, const fs::path& manifest_path,
                     const std::optional<fs::path>& schema_path) {
  const auto csv = read_csv(csv_path);
  auto manifest = read_manifest(manifest_path);
  Schema schema;
  if (schema_path) {
    schema = read_schema(*schema_path);
  } else {
    std::set<std::string> declared;
    for (const auto& c : manifest.columns) {
      declared.insert(c.name);
      if (c.kind == ColumnKind::categorical) schema.categorical.push_back(c.name);
    }
    for (std::size_t i = 0; i + 1 < csv.header.size(); ++i) {
      if (!declared.empty() && !declared.count(csv.header[i])) schema.drop.push_back(csv.header[i]);
    }
  }
  Dataset d;
  d.data = to_labeled_table(csv, schema);
  validate(manifest, d.data.labels.size());
  d.manifest = std::move(manifest);
  return d;
}

}  // namespace driftbench
