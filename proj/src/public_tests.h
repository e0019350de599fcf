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

// Public (non-private) hypothesis tests that can be plugged into the test of
// tests. Each test exposes its minimum sample size, a p-value on a data
// subset, and an analytic power function.

#ifndef TOT_SRC_PUBLIC_TESTS_H_
#define TOT_SRC_PUBLIC_TESTS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "src/dataset.h"
#include "src/effect.h"

namespace tot {

enum class TestFamily { kZ, kT, kAnova, kMvnMean };

// Direction of the alternative for the univariate mean tests. kGreater
// rejects for large positive means; kTwoSided rejects for large |mean|.
enum class Alternative { kGreater, kTwoSided };

absl::StatusOr<TestFamily> ParseTestFamily(std::string_view name);
std::string_view TestFamilyName(TestFamily family);
absl::StatusOr<Alternative> ParseAlternative(std::string_view name);
std::string_view AlternativeName(Alternative alternative);

class PublicTest {
 public:
  virtual ~PublicTest() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t MinSampleSize() const = 0;

  // Shape check (columns, group labels) for a whole dataset before it is
  // partitioned.
  virtual absl::Status CheckCompatible(const Dataset& data) const = 0;

  // Returns nullopt when the statistic is undefined on this subset (too few
  // rows, an empty group, zero variance). The caller decides the fallback.
  virtual std::optional<double> PValue(const Dataset& subset) const = 0;

  // Power at level alpha0 on a sample of size n. Sizes below
  // MinSampleSize() yield alpha0: the caller substitutes a uniform p-value.
  virtual absl::StatusOr<double> Power(std::size_t n, const EffectSpec& effect,
                                       double alpha0) const = 0;
};

absl::StatusOr<std::unique_ptr<PublicTest>> MakePublicTest(
    TestFamily family, Alternative alternative = Alternative::kGreater,
    int groups = 0);

// One-sample z-test with known unit variance, H0: mean = 0.
std::optional<double> ZTestPValue(std::span<const double> values,
                                  Alternative alternative);
double ZTestPower(std::size_t n, double effect, double alpha0,
                  Alternative alternative);

// One-sample t-test, H0: mean = 0. Needs n >= 2 and nonzero spread.
std::optional<double> TTestPValue(std::span<const double> values,
                                  Alternative alternative);
double TTestPower(std::size_t n, double effect, double alpha0,
                  Alternative alternative);

// One-way ANOVA F test over `groups` labelled groups.
std::optional<double> AnovaPValue(const Dataset& subset, int groups);
// Equal group sizes: lambda = n * eta with eta the population variance of the
// group means over sigma^2.
double AnovaPower(std::size_t n, double eta, int groups, double alpha0);

// Test of H0: mu = 0 for N_d(mu, I) rows via n * sum_j xbar_j^2 ~ chi2_d.
std::optional<double> MvnMeanPValue(const Dataset& subset);
double MvnMeanPower(std::size_t n, std::span<const double> mu, double alpha0);

}  // namespace tot

#endif  // TOT_SRC_PUBLIC_TESTS_H_
