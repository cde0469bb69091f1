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

#include "driftbench/table.hpp"

#include <algorithm>

#include "driftbench/error.hpp"

namespace driftbench {

std::string_view to_string(ColumnKind kind) noexcept {
  return kind == ColumnKind::numeric ? "numeric" : "categorical";
}

void RawTable::check_length(std::size_t n) {
  if (!columns_.empty() && n != rows_) throw DimensionError("column length differs from table row count");
  rows_ = n;
}

void RawTable::add_numeric(std::string name, std::vector<double> values) {
  check_length(values.size());
  columns_.push_back(Column{std::move(name), ColumnKind::numeric, std::move(values), {}});
}

void RawTable::add_categorical(std::string name, std::vector<std::string> values) {
  check_length(values.size());
  columns_.push_back(Column{std::move(name), ColumnKind::categorical, {}, std::move(values)});
}

std::optional<std::size_t> RawTable::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

RawTable RawTable::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw DimensionError("row slice out of range");
  RawTable out;
  for (const auto& c : columns_) {
    if (c.kind == ColumnKind::numeric) {
      out.add_numeric(c.name, {c.numbers.begin() + begin, c.numbers.begin() + end});
    } else {
      out.add_categorical(c.name, {c.categories.begin() + begin, c.categories.begin() + end});
    }
  }
  out.rows_ = end - begin;
  return out;
}

RawTable RawTable::select(std::span<const std::size_t> rows) const {
  RawTable out;
  for (const auto& c : columns_) {
    if (c.kind == ColumnKind::numeric) {
      std::vector<double> v;
      v.reserve(rows.size());
      for (auto r : rows) v.push_back(c.numbers.at(r));
      out.add_numeric(c.name, std::move(v));
    } else {
      std::vector<std::string> v;
      v.reserve(rows.size());
      for (auto r : rows) v.push_back(c.categories.at(r));
      out.add_categorical(c.name, std::move(v));
    }
  }
  out.rows_ = rows.size();
  return out;
}

void RawTable::drop(std::span<const std::string> names) {
  for (const auto& n : names) {
    const auto it = std::find_if(columns_.begin(), columns_.end(), [&](const Column& c) { return c.name == n; });
    if (it == columns_.end()) throw SchemaError("cannot drop unknown column '" + n + "'");
    columns_.erase(it);
  }
}

}  // namespace driftbench
