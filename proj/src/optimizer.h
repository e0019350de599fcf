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

// Choice of the number of subsets m and the sub-test level alpha0, either
// for a known effect size or to minimize the effect detectable with a
// target power.

#ifndef TOT_SRC_OPTIMIZER_H_
#define TOT_SRC_OPTIMIZER_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "src/effect.h"
#include "src/public_tests.h"

namespace tot {

// One probed (m, alpha0) pair, kept so callers can audit the optimum.
struct Candidate {
  std::size_t m = 0;
  double alpha0 = 0.0;
  double theta = 0.0;  // public power on floor(n/m) rows at alpha0
  double power = 0.0;  // ToT power
};

struct OptimizerResult {
  std::size_t m = 1;
  double alpha0 = 0.05;
  double theta = 0.0;
  double achieved_power = 0.0;
  std::optional<EffectSpec> min_detectable_effect;
  std::optional<std::size_t> min_detectable_index;  // into the effect grid
  // Set when the effect is null: the best power is the Type I ceiling.
  bool degenerate = false;
  // Target-power mode only: false when no grid effect reached rho.
  bool target_reached = true;
  // Best alpha0 per candidate m, in candidate order.
  std::vector<Candidate> certificates;
};

// {1..floor(sqrt n)}, up to 24 geometric values up to floor(n/3), then
// floor(n/2) and n; sorted, unique.
std::vector<std::size_t> MCandidates(std::size_t n);

// Maximizes ToT power at `effect` over m in MCandidates(n) and alpha0.
absl::StatusOr<OptimizerResult> OptimizeKnownEffect(const PublicTest& test,
                                                    std::size_t n,
                                                    const EffectSpec& effect,
                                                    double epsilon,
                                                    double alpha);

// Binary search over the (ascending) effect grid for the smallest effect
// whose optimized power reaches rho; returns the optimum at that effect.
absl::StatusOr<OptimizerResult> OptimizeTargetPower(
    const PublicTest& test, std::size_t n, double epsilon, double alpha,
    double rho, const std::vector<EffectSpec>& effect_grid);

// `count` effects base * s for s geometric in [lo, hi].
std::vector<EffectSpec> GeometricEffectGrid(const EffectSpec& base, double lo,
                                            double hi, std::size_t count = 16);

struct PowerEvaluation {
  double theta = 0.0;
  double power = 0.0;
};

// ToT power of fixed (m, alpha0) against `effect`, theta taken on
// floor(n/m) rows.
absl::StatusOr<PowerEvaluation> EvaluateTotPower(const PublicTest& test,
                                                 std::size_t n,
                                                 const EffectSpec& effect,
                                                 double epsilon, double alpha,
                                                 std::size_t m, double alpha0);

}  // namespace tot

#endif  // TOT_SRC_OPTIMIZER_H_
