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

// Exact power of the test of tests, its sample-size multiplier, the
// Pena-Barrientos (PB) framework's power, and the Type I lower bound of the
// Canonne et al. multivariate normal tester.

#ifndef TOT_SRC_POWER_ANALYSIS_H_
#define TOT_SRC_POWER_ANALYSIS_H_

#include <cstddef>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tot {

struct PowerQuery {
  double epsilon = 1.0;
  double alpha = 0.05;
  std::size_t m = 1;
  double alpha0 = 0.05;
  double theta = 0.05;  // power of the public test at level alpha0

  absl::Status Validate() const;
};

// q-quantile of B + N with B ~ Binomial(m, alpha0), N ~ Tulap(0, e^-eps).
absl::StatusOr<double> BnQuantile(double q, std::size_t m, double alpha0,
                                  double epsilon);

// P(A + N > t*) with A ~ Binomial(m, theta) and t* the (1 - alpha) quantile
// of the null distribution of B + N.
absl::StatusOr<double> TotPower(const PowerQuery& query);

// Smallest m with TotPower >= rho, scanning m = 1, 2, ... up to max_m.
// FailedPrecondition when theta <= alpha0 (no m can help); NotFound when
// max_m is exhausted.
absl::StatusOr<std::size_t> MinMForPower(double theta, double alpha0,
                                         double rho, double alpha,
                                         double epsilon,
                                         std::size_t max_m = 5000);

// PB majority vote over m randomized-response bits: each subset reports its
// decision truthfully with probability p. Rejects when more than (m-1)/2
// reported bits say "reject". m must be odd.
absl::StatusOr<double> PbPower(std::size_t m, double p, double theta);

// e^eps / (1 + e^eps): the epsilon-DP randomized response keep probability.
double RandomizedResponseKeepProbability(double epsilon);

// Published minimum m for the PB framework at alpha = 0.05, used only as
// reference anchors in comparisons.
inline constexpr std::size_t kPbMinMEpsilon1 = 7;
inline constexpr std::size_t kPbMinMEpsilon01 = 67;

struct PbComparisonRow {
  double theta = 0.0;
  double tot_power = 0.0;
  double pb_power = 0.0;      // level-calibrated
  double pb_raw_power = 0.0;  // majority vote before calibration
};

struct PbComparison {
  // Null rejection rate of the raw majority vote at theta = alpha0.
  double pb_null_rejection = 0.0;
  // Factor applied to the raw PB rejection probability so the PB test has
  // level alpha: min(1, alpha / pb_null_rejection).
  double pb_level_scale = 1.0;
  std::vector<PbComparisonRow> rows;
  bool tot_dominates = true;
};

// PB power at matched (m, alpha0) with p = RandomizedResponseKeepProbability
// (epsilon), thinned so its level is alpha; ToT power at the same (m,
// alpha0). `slack` absorbs floating-point noise in the comparison.
absl::StatusOr<PbComparison> ComparePb(std::size_t m, double alpha0,
                                       double epsilon, double alpha,
                                       const std::vector<double>& theta_grid,
                                       double slack = 1e-12);

// True iff ToT power >= PB power at every theta of the grid.
absl::StatusOr<bool> PbDominanceCheck(std::size_t m, double alpha0,
                                      double epsilon, double alpha,
                                      const std::vector<double>& theta_grid);

struct CanonneQuery {
  std::size_t n = 1;
  std::size_t d = 1;
  double epsilon = 1.0;
  double delta = 1e-3;
  double gamma = 0.1;

  absl::Status Validate() const;
};

// Sample size at or below which the Canonne et al. tester always rejects:
// max{25 ln(d/delta), (5/eps) ln(1/delta)}.
double CanonneAlwaysRejectThreshold(std::size_t d, double epsilon,
                                    double delta);

// Sensitivity term Delta_delta^G and Laplace scale b of the tester's final
// noisy statistic, natural logarithms throughout.
double CanonneDeltaG(const CanonneQuery& query);
double CanonneLaplaceScale(const CanonneQuery& query);

// 1 when n is at or below the threshold, otherwise
// 1 - F_{Z+L}(n^2 gamma^2 / 324) with Z ~ N(0, n sqrt(2d)), L ~ Laplace(b).
absl::StatusOr<double> CanonneType1LowerBound(const CanonneQuery& query);

}  // namespace tot

#endif  // TOT_SRC_POWER_ANALYSIS_H_
