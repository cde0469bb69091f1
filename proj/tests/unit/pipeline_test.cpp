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

#include "driftbench/pipeline.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "driftbench/error.hpp"

namespace driftbench {
namespace {

RawTable colours(std::vector<double> x, std::vector<std::string> c) {
  RawTable t;
  t.add_numeric("x", std::move(x));
  t.add_categorical("colour", std::move(c));
  return t;
}

TEST(Pipeline, ScalesNumericColumns) {
  auto p = FeaturePipeline::fit(colours({0, 10, 4}, {"red", "green", "blue"}));
  auto m = p.transform(colours({5, 12, -1}, {"red", "red", "red"}));
  EXPECT_DOUBLE_EQ(m(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(m(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(m(2, 0), 0.0);
}

TEST(Pipeline, OneHotBlocks) {
  auto p = FeaturePipeline::fit(colours({0, 1, 2}, {"red", "green", "blue"}));
  ASSERT_EQ(p.output_dimensions(), 4U);
  EXPECT_EQ(p.output_names()[2], "colour=green");
  auto m = p.transform(colours({1}, {"green"}));
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m(0, 3), 0.0);
  auto unseen = p.transform(colours({1}, {"purple"}));
  for (std::size_t c = 1; c < 4; ++c) EXPECT_EQ(unseen(0, c), 0.0);
}

TEST(Pipeline, ReferenceSpansTheUnitInterval) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(3.0, 2.0);
  RawTable t;
  std::vector<double> a(300), b(300);
  for (auto& v : a) v = g(rng);
  for (auto& v : b) v = g(rng) * 100;
  t.add_numeric("a", a);
  t.add_numeric("b", b);
  auto p = FeaturePipeline::fit(t);
  auto m = p.transform(t);
  for (std::size_t c = 0; c < 2; ++c) {
    auto col = m.column(c);
    EXPECT_EQ(*std::min_element(col.begin(), col.end()), 0.0);
    EXPECT_EQ(*std::max_element(col.begin(), col.end()), 1.0);
  }
  EXPECT_EQ(p.transform(t), m);
  // Idempotent: refitting on the same reference gives the same pipeline.
  EXPECT_EQ(FeaturePipeline::fit(t), p);
}

TEST(Pipeline, ConstantColumnScalesToZeroWithWarning) {
  RawTable t;
  t.add_numeric("flat", {2, 2, 2});
  t.add_numeric("x", {0, 1, 2});
  auto p = FeaturePipeline::fit(t);
  EXPECT_FALSE(p.warnings().empty());
  RawTable probe;
  probe.add_numeric("flat", {9});
  probe.add_numeric("x", {1});
  EXPECT_EQ(p.transform(probe)(0, 0), 0.0);
}

TEST(Pipeline, Errors) {
  FeaturePipeline unfitted;
  EXPECT_THROW((void)unfitted.transform(colours({1}, {"a"})), UsageError);
  auto p = FeaturePipeline::fit(colours({0, 1}, {"a", "b"}));
  RawTable missing;
  missing.add_numeric("x", {1});
  EXPECT_THROW((void)p.transform(missing), SchemaError);
}

Matrix blob(std::size_t n, double cx, double cy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.1);
  Matrix m(n, 2);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, 0) = cx + g(rng);
    m(r, 1) = cy + g(rng);
  }
  return m;
}

struct Data {
  Matrix x;
  std::vector<int> y;
};

Data unbalanced(std::size_t minority, std::size_t majority, std::uint64_t seed) {
  Data d{Matrix(0, 0), {}};
  auto a = blob(minority, 0.2, 0.2, seed);
  auto b = blob(majority, 0.8, 0.7, seed + 1);
  for (std::size_t i = 0, j = 0; i < minority || j < majority;) {
    // interleave so that class membership is not positional
    if (i < minority && (j >= majority || (i + j) % 3 == 0)) {
      d.x.append_row(a.row(i++));
      d.y.push_back(1);
    } else {
      d.x.append_row(b.row(j++));
      d.y.push_back(0);
    }
  }
  return d;
}

TEST(Smote, BalancesOneToTwoInput) {
  auto d = unbalanced(100, 200, 3);
  auto out = smote(d.x, d.y, 5, 7);
  ASSERT_EQ(out.samples.rows(), 400U);
  EXPECT_EQ(std::count(out.labels.begin(), out.labels.end(), 1), 200);
  EXPECT_EQ(std::count(out.labels.begin(), out.labels.end(), 0), 200);
  EXPECT_EQ(out.original_rows, 300U);
  EXPECT_EQ(out.parents.size(), 100U);
}

TEST(Smote, SyntheticRowsLieOnParentSegments) {
  auto d = unbalanced(60, 150, 4);
  auto out = smote(d.x, d.y, 5, 8);
  ASSERT_EQ(out.parents.size(), out.samples.rows() - out.original_rows);
  for (std::size_t s = 0; s < out.parents.size(); ++s) {
    const auto [a, b] = out.parents[s];
    const double u = out.weights[s];
    ASSERT_GE(u, 0.0);
    ASSERT_LE(u, 1.0);
    ASSERT_EQ(d.y[a], 1);
    ASSERT_EQ(d.y[b], 1);
    ASSERT_NE(a, b);
    const auto row = out.samples.row(out.original_rows + s);
    for (std::size_t c = 0; c < 2; ++c) {
      ASSERT_NEAR(row[c], d.x(a, c) + u * (d.x(b, c) - d.x(a, c)), 1e-9);
    }
    EXPECT_EQ(out.labels[out.original_rows + s], 1);
  }
}

TEST(Smote, ParentIsAmongTheKNearestMinorityPoints) {
  auto d = unbalanced(40, 90, 5);
  const std::size_t k = 3;
  auto out = smote(d.x, d.y, k, 9);
  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < d.y.size(); ++i)
    if (d.y[i] == 1) minority.push_back(i);
  auto dist2 = [&](std::size_t i, std::size_t j) {
    double s = 0;
    for (std::size_t c = 0; c < 2; ++c) s += std::pow(d.x(i, c) - d.x(j, c), 2);
    return s;
  };
  for (const auto& [a, b] : out.parents) {
    std::size_t closer = 0;
    for (std::size_t m : minority)
      if (m != a && dist2(a, m) < dist2(a, b)) ++closer;
    EXPECT_LT(closer, k);
  }
}

TEST(Smote, BalancedInputIsUnchanged) {
  auto d = unbalanced(50, 50, 6);
  auto out = smote(d.x, d.y, 5, 1);
  EXPECT_EQ(out.samples, d.x);
  EXPECT_EQ(out.labels, d.y);
  EXPECT_TRUE(out.parents.empty());
}

TEST(Smote, DeterministicPerSeed) {
  auto d = unbalanced(30, 80, 7);
  EXPECT_EQ(smote(d.x, d.y, 5, 3).samples, smote(d.x, d.y, 5, 3).samples);
}

TEST(Smote, Errors) {
  auto d = unbalanced(5, 40, 8);
  EXPECT_THROW((void)smote(d.x, d.y, 5, 1), NeighborError);
  std::vector<int> one(d.y.size(), 0);
  EXPECT_THROW((void)smote(d.x, one, 5, 1), DegenerateInputError);
  EXPECT_THROW((void)smote(d.x, d.y, 0, 1), ParameterError);
}

}  // namespace
}  // namespace driftbench
