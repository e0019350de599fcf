//
// Copyright 2026 The Test-of-Tests Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "src/test_of_tests.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "src/private_binomial.h"
#include "src/sim_harness.h"

namespace tot {
namespace {

Dataset NormalData(std::size_t n, double mu, std::uint64_t seed) {
  Rng rng = MakeRng(seed, 0);
  return *GenerateDataset({GeneratorFamily::kNormal, n, StandardizedMean{mu}}, rng);
}

TEST(PartitionTest, DisjointCoverWithBalancedSizes) {
  const Dataset data = NormalData(103, 0.0, 1);
  for (std::size_t m : {1, 2, 7, 10, 103}) {
    Rng rng = MakeRng(2, m);
    const auto subsets = *PartitionIndices(data, m, rng);
    ASSERT_EQ(subsets.size(), m);
    std::set<std::size_t> seen;
    for (const auto& s : subsets) {
      EXPECT_GE(s.size(), 103 / m);
      EXPECT_LE(s.size(), 103 / m + 1);
      for (std::size_t i : s) EXPECT_TRUE(seen.insert(i).second);
    }
    EXPECT_EQ(seen.size(), 103u);
  }
}

TEST(PartitionTest, StratifiesByGroup) {
  Rng gen = MakeRng(3, 0);
  const Dataset data = *GenerateDataset({GeneratorFamily::kAnova, 50, AnovaEffect{0.0, 3}}, gen);
  std::vector<std::size_t> per_group(3, 0);
  for (std::size_t i = 0; i < data.rows(); ++i) ++per_group[data.group(i)];
  Rng rng = MakeRng(4, 0);
  const auto subsets = *Partition(data, 4, rng);
  for (const Dataset& s : subsets) {
    EXPECT_EQ(s.num_groups(), 3u);
    std::vector<std::size_t> counts(3, 0);
    for (std::size_t i = 0; i < s.rows(); ++i) ++counts[s.group(i)];
    for (int g = 0; g < 3; ++g) {
      EXPECT_GE(counts[g], per_group[g] / 4);
      EXPECT_LE(counts[g], per_group[g] / 4 + 1);
    }
  }
}

TEST(PartitionTest, DeterministicAndValidated) {
  const Dataset data = NormalData(20, 0.0, 1);
  Rng a = MakeRng(5, 0), b = MakeRng(5, 0);
  EXPECT_EQ(*PartitionIndices(data, 4, a), *PartitionIndices(data, 4, b));
  EXPECT_FALSE(PartitionIndices(data, 0, a).ok());
  EXPECT_FALSE(PartitionIndices(data, 21, a).ok());
}

TEST(TotTest, ConfigValidation) {
  EXPECT_TRUE(ToTConfig{}.Validate().ok());
  EXPECT_FALSE((ToTConfig{0.0, 0.05, 5, 0.1, 0}).Validate().ok());
  EXPECT_FALSE((ToTConfig{1.0, 1.0, 5, 0.1, 0}).Validate().ok());
  EXPECT_FALSE((ToTConfig{1.0, 0.05, 0, 0.1, 0}).Validate().ok());
  EXPECT_FALSE((ToTConfig{1.0, 0.05, 5, 0.0, 0}).Validate().ok());
  auto z = *MakePublicTest(TestFamily::kZ);
  EXPECT_FALSE(RunTot(NormalData(4, 0, 1), *z, {1.0, 0.05, 5, 0.1, 0}).ok());
}

TEST(TotTest, ReleaseMatchesPrivateBinomial) {
  const ToTConfig config{0.7, 0.05, 12, 0.2, 99};
  const auto r = *ReleaseCount({5, 12}, 60, config);
  EXPECT_NEAR(r.p_value, NoisyBinomialSf(r.z, 12, 0.2, 0.7), 1e-15);
  EXPECT_EQ(r.reject, r.p_value < 0.05);
  EXPECT_EQ(r.n, 60u);
  EXPECT_EQ(r.subtests_available, 12u);
}

TEST(TotTest, DeterministicGivenSeed) {
  auto z = *MakePublicTest(TestFamily::kZ);
  const Dataset data = NormalData(80, 0.3, 7);
  const ToTConfig config{1.0, 0.05, 8, 0.2, 1234};
  const auto a = *RunTot(data, *z, config);
  const auto b = *RunTot(data, *z, config);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.p_value, b.p_value);
}

// Changing one row alters one subset, so the count moves by at most one and,
// with the noise stream fixed, the release moves by the same integer.
TEST(TotTest, OneRowChangeMovesCountByAtMostOne) {
  auto z = *MakePublicTest(TestFamily::kZ);
  const Dataset data = NormalData(60, 0.2, 11);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ToTConfig config{1.0, 0.05, 6, 0.3, seed};
    const std::size_t row = seed % 60;
    const Dataset flipped = data.WithValue(row, 0, seed % 2 ? 50.0 : -50.0);
    const auto c1 = *CountSubtestRejections(data, *z, config);
    const auto c2 = *CountSubtestRejections(flipped, *z, config);
    const long long diff = static_cast<long long>(c1.rejections) -
                           static_cast<long long>(c2.rejections);
    EXPECT_LE(std::llabs(diff), 1);
    const auto r1 = *RunTot(data, *z, config);
    const auto r2 = *RunTot(flipped, *z, config);
    EXPECT_NEAR(r1.z - r2.z, static_cast<double>(diff), 1e-9);
  }
}

TEST(TotTest, UnavailableSubtestsFallBackToUniform) {
  auto t = *MakePublicTest(TestFamily::kT);
  const Dataset data = NormalData(30, 5.0, 2);
  double rate = 0.0;
  const int reps = 4000;
  for (int s = 0; s < reps; ++s) {
    // m = n leaves one row per subset, below the t-test minimum.
    const auto c = *CountSubtestRejections(data, *t, {1.0, 0.05, 30, 0.25, static_cast<std::uint64_t>(s)});
    EXPECT_EQ(c.available, 0u);
    rate += c.rejections / 30.0;
  }
  EXPECT_NEAR(rate / reps, 0.25, 4 * std::sqrt(0.25 * 0.75 / (30.0 * reps)));
}

TEST(TotTest, NullRejectionRateAtMostAlpha) {
  auto z = *MakePublicTest(TestFamily::kZ);
  const int reps = 20000;
  int rejections = 0;
  Rng gen = MakeRng(77, 0);
  for (int r = 0; r < reps; ++r) {
    const Dataset data = *GenerateDataset({GeneratorFamily::kNormal, 40, StandardizedMean{0.0}}, gen);
    rejections += RunTot(data, *z, {1.0, 0.05, 8, 0.1, static_cast<std::uint64_t>(r)})->reject;
  }
  const double est = static_cast<double>(rejections) / reps;
  EXPECT_LE(est, 0.05 + 3 * std::sqrt(0.05 * 0.95 / reps));
}

}  // namespace
}  // namespace tot
