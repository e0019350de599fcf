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

#include "src/public_tests.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "boost/math/distributions/fisher_f.hpp"
#include "boost/math/distributions/students_t.hpp"
#include "gtest/gtest.h"
#include "src/distributions.h"
#include "src/rng.h"
#include "src/sim_harness.h"

namespace tot {
namespace {

double KsUniform(std::vector<double> ps) {
  std::sort(ps.begin(), ps.end());
  const double n = static_cast<double>(ps.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ks = std::max({ks, std::abs(ps[i] - i / n), std::abs(ps[i] - (i + 1) / n)});
  }
  return ks * std::sqrt(n);
}

struct Case {
  TestFamily family;
  Alternative alternative;
  int groups;
  GeneratorSpec spec;  // effect filled per use
  EffectSpec effect;
};

std::vector<Case> Cases() {
  std::vector<Case> cases;
  for (auto alt : {Alternative::kGreater, Alternative::kTwoSided}) {
    cases.push_back({TestFamily::kZ, alt, 0, {GeneratorFamily::kNormal, 12}, StandardizedMean{0.4}});
    cases.push_back({TestFamily::kT, alt, 0, {GeneratorFamily::kNormal, 9}, StandardizedMean{0.5}});
  }
  cases.push_back({TestFamily::kAnova, Alternative::kGreater, 3, {GeneratorFamily::kAnova, 15},
                   AnovaEffect{0.3, 3}});
  cases.push_back({TestFamily::kMvnMean, Alternative::kGreater, 0, {GeneratorFamily::kMvn, 10},
                   MeanVector{{0.3, -0.2, 0.1}}});
  return cases;
}

EffectSpec NullOf(const EffectSpec& e) { return ScaleEffect(e, 0.0); }

TEST(PublicTestsTest, NullPValuesAreUniform) {
  for (const Case& c : Cases()) {
    auto test = *MakePublicTest(c.family, c.alternative, c.groups);
    GeneratorSpec spec = c.spec;
    spec.effect = NullOf(c.effect);
    Rng rng = MakeRng(4, static_cast<int>(c.family));
    std::vector<double> ps;
    for (int r = 0; r < 40000; ++r) {
      const auto p = test->PValue(*GenerateDataset(spec, rng));
      ASSERT_TRUE(p.has_value());
      ps.push_back(*p);
    }
    EXPECT_LT(KsUniform(ps), 1.9495) << test->name();
  }
}

TEST(PublicTestsTest, PowerMatchesMonteCarlo) {
  for (const Case& c : Cases()) {
    auto test = *MakePublicTest(c.family, c.alternative, c.groups);
    GeneratorSpec spec = c.spec;
    spec.effect = c.effect;
    const double alpha0 = 0.1;
    const double power = *test->Power(spec.n, c.effect, alpha0);
    Rng rng = MakeRng(8, static_cast<int>(c.family));
    const int reps = 40000;
    int hits = 0;
    for (int r = 0; r < reps; ++r) hits += *test->PValue(*GenerateDataset(spec, rng)) < alpha0;
    const double est = static_cast<double>(hits) / reps;
    EXPECT_LE(std::abs(est - power), 4.0 * std::sqrt(power * (1 - power) / reps))
        << test->name() << " analytic " << power << " mc " << est;
  }
}

TEST(PublicTestsTest, PowerAtNullIsLevel) {
  for (const Case& c : Cases()) {
    auto test = *MakePublicTest(c.family, c.alternative, c.groups);
    for (double a0 : {0.01, 0.2, 0.7}) {
      EXPECT_NEAR(*test->Power(c.spec.n, NullOf(c.effect), a0), a0, 1e-9) << test->name();
    }
  }
}

TEST(PublicTestsTest, PowerIncreasesWithSampleSize) {
  for (const Case& c : Cases()) {
    auto test = *MakePublicTest(c.family, c.alternative, c.groups);
    double prev = 0.0;
    for (std::size_t n = test->MinSampleSize() + 1; n < 200; n += 7) {
      const double p = *test->Power(n, c.effect, 0.05);
      EXPECT_GE(p, prev - 1e-12);
      prev = p;
    }
  }
}

TEST(PublicTestsTest, KnownValues) {
  const std::vector<double> x = {0.5, 1.5, -0.2, 0.9};
  // Mean 0.675, z = 2 * 0.675.
  EXPECT_NEAR(*ZTestPValue(x, Alternative::kGreater), NormalSf(1.35), 1e-15);
  EXPECT_NEAR(*ZTestPValue(x, Alternative::kTwoSided), 2 * NormalSf(1.35), 1e-15);
  double ss = 0.0;
  for (double v : x) ss += (v - 0.675) * (v - 0.675);
  const double t = 0.675 / std::sqrt(ss / 3.0 / 4.0);
  boost::math::students_t dist(3.0);
  EXPECT_NEAR(*TTestPValue(x, Alternative::kGreater),
              boost::math::cdf(boost::math::complement(dist, t)), 1e-13);
  EXPECT_NEAR(ZTestPower(25, 0.0, 0.05, Alternative::kGreater), 0.05, 1e-14);
  EXPECT_NEAR(ZTestPower(16, 0.5, 0.05, Alternative::kGreater), NormalSf(1.6448536269514722 - 2.0), 1e-12);
}

TEST(PublicTestsTest, AnovaMatchesHandComputation) {
  // Groups {1,2,3}, {4,6}, {0,1,2}.
  auto data = *Dataset::Create({1, 2, 3, 4, 6, 0, 1, 2}, 1, {0, 0, 0, 1, 1, 2, 2, 2},
                               {"a", "b", "c"});
  const double grand = 19.0 / 8.0;
  const double between = 3 * std::pow(2 - grand, 2) + 2 * std::pow(5 - grand, 2) +
                         3 * std::pow(1 - grand, 2);
  const double within = 2.0 + 2.0 + 2.0;
  const double f = (between / 2) / (within / 5);
  boost::math::fisher_f dist(2, 5);
  EXPECT_NEAR(*AnovaPValue(data, 3), boost::math::cdf(boost::math::complement(dist, f)), 1e-13);
}

TEST(PublicTestsTest, DegenerateSubsetsHaveNoPValue) {
  EXPECT_FALSE(TTestPValue(std::vector<double>{1.0}, Alternative::kGreater).has_value());
  EXPECT_FALSE(TTestPValue(std::vector<double>{2.0, 2.0, 2.0}, Alternative::kGreater).has_value());
  EXPECT_FALSE(ZTestPValue(std::vector<double>{}, Alternative::kGreater).has_value());
  auto missing = *Dataset::Create({1, 2, 3, 4}, 1, {0, 0, 0, 0}, {"a", "b"});
  EXPECT_FALSE(AnovaPValue(missing, 2).has_value());
}

TEST(PublicTestsTest, ParsingAndValidation) {
  EXPECT_EQ(*ParseTestFamily("mvn"), TestFamily::kMvnMean);
  EXPECT_EQ(*ParseTestFamily("t"), TestFamily::kT);
  EXPECT_FALSE(ParseTestFamily("chi2").ok());
  EXPECT_EQ(*ParseAlternative("two-sided"), Alternative::kTwoSided);
  EXPECT_FALSE(ParseAlternative("less").ok());
  EXPECT_FALSE(MakePublicTest(TestFamily::kAnova, Alternative::kGreater, 1).ok());
  auto z = *MakePublicTest(TestFamily::kZ);
  EXPECT_FALSE(z->Power(10, AnovaEffect{0.1, 2}, 0.05).ok());
  EXPECT_FALSE(z->Power(10, StandardizedMean{0.1}, 0.0).ok());
  auto two_col = *Dataset::Create({1, 2, 3, 4}, 2);
  EXPECT_FALSE(z->CheckCompatible(two_col).ok());
  auto anova = *MakePublicTest(TestFamily::kAnova, Alternative::kGreater, 3);
  auto ungrouped = *Dataset::Create({1, 2, 3, 4}, 1);
  EXPECT_FALSE(anova->CheckCompatible(ungrouped).ok());
}

}  // namespace
}  // namespace tot
