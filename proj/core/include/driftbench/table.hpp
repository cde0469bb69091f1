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

// Column-oriented raw (pre-encoding) table. Numeric columns hold doubles,
// categorical columns hold their string values verbatim.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace driftbench {

enum class ColumnKind { numeric, categorical };

std::string_view to_string(ColumnKind kind) noexcept;

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  std::vector<double> numbers;            // numeric only
  std::vector<std::string> categories;    // categorical only

  [[nodiscard]] std::size_t size() const noexcept {
    return kind == ColumnKind::numeric ? numbers.size() : categories.size();
  }
  friend bool operator==(const Column&, const Column&) = default;
};

class RawTable {
 public:
  RawTable() = default;

  void add_numeric(std::string name, std::vector<double> values);
  void add_categorical(std::string name, std::vector<std::string> values);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
  [[nodiscard]] const Column& column(std::size_t i) const { return columns_.at(i); }
  [[nodiscard]] Column& column(std::size_t i) { return columns_.at(i); }
  [[nodiscard]] const std::vector<Column>& columns() const noexcept { return columns_; }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const noexcept;

  [[nodiscard]] RawTable slice(std::size_t begin, std::size_t end) const;
  [[nodiscard]] RawTable select(std::span<const std::size_t> rows) const;
  /// Removes the named columns; unknown names throw SchemaError.
  void drop(std::span<const std::string> names);

  friend bool operator==(const RawTable&, const RawTable&) = default;

 private:
  void check_length(std::size_t n);

  std::vector<Column> columns_;
  std::size_t rows_ = 0;
};

}  // namespace driftbench
