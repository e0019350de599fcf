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

// The test of tests: split the data into m disjoint subsets, run a public
// test on each, count the subsets that reject at alpha0, and release the
// count through the private binomial test.

#ifndef TOT_SRC_TEST_OF_TESTS_H_
#define TOT_SRC_TEST_OF_TESTS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "src/dataset.h"
#include "src/public_tests.h"
#include "src/rng.h"

namespace tot {

struct ToTConfig {
  double epsilon = 1.0;
  double alpha = 0.05;
  std::size_t m = 1;
  double alpha0 = 0.05;
  std::uint64_t seed = 0;

  // Checks everything except m <= n, which needs the data.
  absl::Status Validate() const;
};

struct ToTResult {
  double z = 0.0;
  double p_value = 1.0;
  bool reject = false;
  // Number of subsets on which the public test could be evaluated; the rest
  // used a uniform p-value.
  std::size_t subtests_available = 0;
  std::size_t n = 0;
  ToTConfig config;
};

// Row indices for each of the m subsets. Sizes are floor(n/m) or ceil(n/m)
// with exactly n mod m of the larger size. With group labels the split is
// stratified: each subset receives floor or ceil of every group's share.
absl::StatusOr<std::vector<std::vector<std::size_t>>> PartitionIndices(
    const Dataset& data, std::size_t m, Rng& rng);

absl::StatusOr<std::vector<Dataset>> Partition(const Dataset& data,
                                               std::size_t m, Rng& rng);

struct SubtestCount {
  std::size_t rejections = 0;  // a in the paper's notation
  std::size_t available = 0;
};

// Partition plus per-subset decisions, using the same random streams as
// RunTot for the given config. The count is the only data-dependent input
// to the released statistic.
absl::StatusOr<SubtestCount> CountSubtestRejections(const Dataset& data,
                                                    const PublicTest& test,
                                                    const ToTConfig& config);

// Releases the count with Tulap noise and computes the private p-value.
absl::StatusOr<ToTResult> ReleaseCount(const SubtestCount& count,
                                       std::size_t n, const ToTConfig& config);

// Full procedure. Deterministic given (data, config).
absl::StatusOr<ToTResult> RunTot(const Dataset& data, const PublicTest& test,
                                 const ToTConfig& config);

}  // namespace tot

#endif  // TOT_SRC_TEST_OF_TESTS_H_
