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

// Private binomial test used as the aggregator of the test of tests: a count
// of sub-test rejections is released with Tulap noise, and the p-value is
// the upper tail of Binomial(m, alpha0) + Tulap(0, exp(-epsilon)) at the
// released value.

#ifndef TOT_SRC_PRIVATE_BINOMIAL_H_
#define TOT_SRC_PRIVATE_BINOMIAL_H_

#include <cstddef>

#include "absl/status/statusor.h"
#include "src/rng.h"

namespace tot {

struct PrivateCount {
  double z = 0.0;  // noised count
  std::size_t m = 0;
  double epsilon = 0.0;
};

// z ~ Tulap(a, exp(-epsilon)). Requires 0 <= a <= m, m >= 1, epsilon > 0.
absl::StatusOr<PrivateCount> PrivatizeCount(long long a, std::size_t m,
                                            double epsilon, Rng& rng);

// P(B + N >= pc.z) with B ~ Binomial(m, alpha0), N ~ Tulap(0, e^-epsilon).
absl::StatusOr<double> PrivateBinomialPValue(const PrivateCount& pc,
                                             double alpha0);

// Distribution of X + N with X ~ Binomial(m, p) and N ~ Tulap(0, e^-eps).
// These skip argument validation; callers own it.
double NoisyBinomialCdf(double t, std::size_t m, double p, double epsilon);
double NoisyBinomialSf(double t, std::size_t m, double p, double epsilon);

}  // namespace tot

#endif  // TOT_SRC_PRIVATE_BINOMIAL_H_
