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

#include "src/private_binomial.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "src/distributions.h"
#include "src/rng.h"

namespace tot {
namespace {

// Convolution of the binomial pmf with shifted Tulap survival functions.
double ConvolutionSf(double z, int m, double p, double eps) {
  double total = 0.0;
  for (int i = 0; i <= m; ++i) {
    const auto noise = *TulapParams::FromEpsilon(i, eps);
    total += BinomialPmfCdf(i, m, p)->first * TulapSf(z, noise);
  }
  return total;
}

TEST(NoisyBinomialTest, MatchesConvolution) {
  for (int m : {1, 4, 25, 120}) {
    for (double p : {0.0, 0.05, 0.4, 1.0}) {
      for (double eps : {0.1, 1.0, 6.0}) {
        for (double z : {-5.3, -0.5, 0.0, 0.25, m / 2.0, m + 0.7, m + 12.0}) {
          EXPECT_NEAR(NoisyBinomialSf(z, m, p, eps), ConvolutionSf(z, m, p, eps), 1e-12)
              << m << " " << p << " " << eps << " " << z;
        }
      }
    }
  }
}

TEST(NoisyBinomialTest, CdfAndSfSumToOne) {
  for (double z = -8.0; z <= 30.0; z += 0.61) {
    EXPECT_NEAR(NoisyBinomialCdf(z, 20, 0.3, 0.5) + NoisyBinomialSf(z, 20, 0.3, 0.5),
                1.0, 1e-13);
  }
}

// sum_i f_B(i) F_N(z - i) + p = 1, with N the centred Tulap.
TEST(NoisyBinomialTest, PValueComplementsMixtureCdf) {
  const auto noise = *TulapParams::FromEpsilon(0.0, 0.9);
  for (double z : {-3.0, 0.4, 2.5, 7.75, 14.0}) {
    double cdf = 0.0;
    for (int i = 0; i <= 12; ++i) {
      cdf += BinomialPmfCdf(i, 12, 0.25)->first * TulapCdf(z - i, noise);
    }
    const double p = *PrivateBinomialPValue({z, 12, 0.9}, 0.25);
    EXPECT_NEAR(cdf + p, 1.0, 1e-10);
  }
}

TEST(NoisyBinomialTest, SfDecreasesInZAndIncreasesInP) {
  double prev = 1.0;
  for (double z = -10.0; z <= 40.0; z += 0.05) {
    const double s = NoisyBinomialSf(z, 30, 0.2, 1.0);
    EXPECT_LE(s, prev + 1e-15);
    prev = s;
  }
  for (double z : {-1.0, 3.0, 10.0}) {
    EXPECT_LE(NoisyBinomialSf(z, 30, 0.1, 1.0), NoisyBinomialSf(z, 30, 0.3, 1.0));
  }
  EXPECT_EQ(NoisyBinomialSf(-INFINITY, 5, 0.3, 1.0), 1.0);
  EXPECT_EQ(NoisyBinomialSf(INFINITY, 5, 0.3, 1.0), 0.0);
}

TEST(PrivateBinomialTest, NullPValuesAreUniform) {
  const std::size_t m = 15;
  const double alpha0 = 0.1;
  Rng rng = MakeRng(21, 0);
  std::binomial_distribution<long long> bin(m, alpha0);
  std::vector<double> ps(100000);
  for (double& p : ps) {
    const auto pc = *PrivatizeCount(bin(rng), m, 0.8, rng);
    p = *PrivateBinomialPValue(pc, alpha0);
  }
  std::sort(ps.begin(), ps.end());
  double ks = 0.0;
  const double n = static_cast<double>(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ks = std::max({ks, std::abs(ps[i] - i / n), std::abs(ps[i] - (i + 1) / n)});
  }
  EXPECT_LT(ks * std::sqrt(n), 1.9495);
}

TEST(PrivateBinomialTest, Validation) {
  Rng rng = MakeRng(1, 0);
  EXPECT_FALSE(PrivatizeCount(3, 2, 1.0, rng).ok());
  EXPECT_FALSE(PrivatizeCount(-1, 2, 1.0, rng).ok());
  EXPECT_FALSE(PrivatizeCount(1, 0, 1.0, rng).ok());
  EXPECT_FALSE(PrivatizeCount(1, 2, 0.0, rng).ok());
  EXPECT_FALSE(PrivateBinomialPValue({1.0, 5, 1.0}, 0.0).ok());
  EXPECT_FALSE(PrivateBinomialPValue({1.0, 5, 1.0}, 1.0).ok());
  EXPECT_FALSE(PrivateBinomialPValue({NAN, 5, 1.0}, 0.5).ok());
  EXPECT_FALSE(PrivateBinomialPValue({1.0, 5, -2.0}, 0.5).ok());
}

TEST(PrivateBinomialTest, SeededReleaseIsDeterministic) {
  Rng a = MakeRng(9, 2), b = MakeRng(9, 2);
  EXPECT_EQ(PrivatizeCount(4, 10, 1.0, a)->z, PrivatizeCount(4, 10, 1.0, b)->z);
}

}  // namespace
}  // namespace tot
