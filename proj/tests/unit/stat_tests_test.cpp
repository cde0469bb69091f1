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

#include "driftbench/stat_tests.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "driftbench/error.hpp"

namespace driftbench {
namespace {

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  double d = 0;
  for (double x : pooled) {
    const double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size();
    const double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) / b.size();
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

double u_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a)
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  return u;
}

// Enumerates every way of splitting the pooled sample into groups of the
// original sizes and returns the share of splits whose statistic is at least
// as extreme as the observed one.
template <class Stat>
double permutation_p(const std::vector<double>& a, const std::vector<double>& b, Stat extremity) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = a.size(), total = pooled.size();
  const double observed = extremity(a, b);
  std::size_t hits = 0, splits = 0;
  for (std::uint32_t mask = 0; mask < (1U << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < total; ++i) ((mask >> i) & 1U ? x : y).push_back(pooled[i]);
    ++splits;
    if (extremity(x, y) >= observed - 1e-12) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(splits);
}

TEST(KsTest, IdenticalSamplesGiveUnitPValue) {
  std::vector<double> a{0.1, 0.4, 0.5, 0.9};
  auto r = ks_test(a, a);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(KsTest, DisjointSupports) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lo(0.0, 0.4), hi(0.6, 1.0);
  std::vector<double> a(5000), b(5000);
  for (auto& x : a) x = lo(rng);
  for (auto& x : b) x = hi(rng);
  auto r = ks_test(a, b);
  EXPECT_EQ(r.statistic, 1.0);
  EXPECT_LT(r.p_value, 1e-6);
}

TEST(KsTest, StatisticMatchesEcdfDefinition) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> a(37), b(53);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = g(rng) + 0.3;
    // include ties across samples
    b[0] = a[0];
    EXPECT_NEAR(ks_test(a, b).statistic, ks_statistic(a, b), 1e-12);
  }
}

TEST(KsTest, ExactPValueMatchesPermutationOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= 6; ++m) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> a(n), b(m);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng) + 0.25 * rep;
        const double oracle = permutation_p(a, b, ks_statistic);
        EXPECT_NEAR(ks_test(a, b).p_value, oracle, 0.02) << "n=" << n << " m=" << m;
      }
    }
  }
}

TEST(KsTest, AsymptoticBranchIsCloseToExactAtTheLimit) {
  // 100 x 100 is at the exact limit; 101 x 100 uses the asymptotic series.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(101), b(100);
  for (auto& x : a) x = g(rng);
  for (auto& x : b) x = g(rng) + 0.3;
  const auto exact = ks_test(std::span(a).first(100), b);
  const auto approx = ks_test(a, b);
  EXPECT_NEAR(exact.p_value, approx.p_value, 0.05);
}

TEST(KolmogorovSurvival, KnownValues) {
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
  // Q(1.36) is the familiar 5% critical point.
  EXPECT_NEAR(kolmogorov_survival(1.358), 0.05, 1e-3);
  EXPECT_NEAR(kolmogorov_survival(1.628), 0.01, 1e-3);
}

TEST(MannWhitney, ExactPValueMatchesPermutationOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= 6; ++m) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> a(n), b(m);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng) + 0.3 * rep;
        const double center = 0.5 * static_cast<double>(n * m);
        const double oracle = permutation_p(a, b, [&](const auto& x, const auto& y) {
          return std::fabs(u_statistic(x, y) - center);
        });
        const auto r = mann_whitney_test(a, b);
        EXPECT_NEAR(r.statistic, u_statistic(a, b), 1e-12);
        EXPECT_NEAR(r.p_value, oracle, 0.02) << "n=" << n << " m=" << m;
      }
    }
  }
}

TEST(MannWhitney, TiesUseMidranks) {
  std::vector<double> a{1, 2, 2, 3}, b{2, 2, 4, 5, 6};
  const auto r = mann_whitney_test(a, b);
  EXPECT_NEAR(r.statistic, u_statistic(a, b), 1e-12);
  EXPECT_GT(r.p_value, 0.0);
  EXPECT_LE(r.p_value, 1.0);
}

TEST(MannWhitney, AllEqualValuesGiveUnitPValue) {
  std::vector<double> a(30, 0.5), b(40, 0.5);
  EXPECT_EQ(mann_whitney_test(a, b).p_value, 1.0);
}

TEST(MannWhitney, LargeShiftIsSignificant) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(500), b(500);
  for (auto& x : a) x = g(rng);
  for (auto& x : b) x = g(rng) + 1.0;
  EXPECT_LT(mann_whitney_test(a, b).p_value, 1e-10);
}

TEST(TwoSample, EmptyInputIsRejected) {
  std::vector<double> a{1.0}, none;
  EXPECT_THROW((void)ks_test(a, none), InsufficientDataError);
  EXPECT_THROW((void)mann_whitney_test(none, a), InsufficientDataError);
}

}  // namespace
}  // namespace driftbench
