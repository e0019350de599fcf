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

#include "src/power_analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "absl/strings/str_cat.h"
#include "boost/math/tools/roots.hpp"
#include "src/distributions.h"
#include "src/private_binomial.h"
#include "src/status_macros.h"

namespace tot {
namespace {

bool InOpenUnit(double x) { return x > 0.0 && x < 1.0; }
bool InClosedUnit(double x) { return x >= 0.0 && x <= 1.0; }

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status CheckOpenUnit(double x, const char* name) {
  if (!InOpenUnit(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must lie in (0, 1), got ", x));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status PowerQuery::Validate() const {
  TOT_RETURN_IF_ERROR(CheckEpsilon(epsilon));
  TOT_RETURN_IF_ERROR(CheckOpenUnit(alpha, "alpha"));
  TOT_RETURN_IF_ERROR(CheckOpenUnit(alpha0, "alpha0"));
  if (m < 1) return absl::InvalidArgumentError("m must be at least 1");
  if (!InClosedUnit(theta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must lie in [0, 1], got ", theta));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> BnQuantile(double q, std::size_t m, double alpha0,
                                  double epsilon) {
  if (!InOpenUnit(q)) {
    return absl::OutOfRangeError(
        absl::StrCat("quantile level must lie in (0, 1), got ", q));
  }
  TOT_RETURN_IF_ERROR(CheckEpsilon(epsilon));
  TOT_RETURN_IF_ERROR(CheckOpenUnit(alpha0, "alpha0"));
  if (m < 1) return absl::InvalidArgumentError("m must be at least 1");

  // Tulap tails decay like e^{-eps |x|}, so 50/eps past either end of the
  // binomial support leaves mass far below any representable q.
  const double pad = 50.0 / epsilon + 1.0;
  double lo = -pad;
  double hi = static_cast<double>(m) + pad;
  auto f = [&](double t) { return NoisyBinomialCdf(t, m, alpha0, epsilon) - q; };
  double flo = f(lo);
  double fhi = f(hi);
  // Only reachable for q within ~1e-21 of 0 or 1.
  while (flo > 0.0) {
    lo -= pad;
    flo = f(lo);
  }
  while (fhi < 0.0) {
    hi += pad;
    fhi = f(hi);
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
      max_iter);
  return 0.5 * (a + b);
}

absl::StatusOr<double> TotPower(const PowerQuery& query) {
  TOT_RETURN_IF_ERROR(query.Validate());
  TOT_ASSIGN_OR_RETURN(double t, BnQuantile(1.0 - query.alpha, query.m,
                                            query.alpha0, query.epsilon));
  return NoisyBinomialSf(t, query.m, query.theta, query.epsilon);
}

absl::StatusOr<std::size_t> MinMForPower(double theta, double alpha0,
                                         double rho, double alpha,
                                         double epsilon, std::size_t max_m) {
  TOT_RETURN_IF_ERROR(CheckOpenUnit(rho, "rho"));
  if (!(theta > alpha0)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no m reaches the target when theta (", theta,
        ") does not exceed alpha0 (", alpha0, ")"));
  }
  for (std::size_t m = 1; m <= max_m; ++m) {
    TOT_ASSIGN_OR_RETURN(double power,
                         TotPower({epsilon, alpha, m, alpha0, theta}));
    if (power >= rho) return m;
  }
  return absl::NotFoundError(
      absl::StrCat("no m <= ", max_m, " reaches power ", rho));
}

absl::StatusOr<double> PbPower(std::size_t m, double p, double theta) {
  if (m < 1 || m % 2 == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("PB needs an odd number of subsets, got ", m));
  }
  if (!InClosedUnit(p) || !InClosedUnit(theta)) {
    return absl::InvalidArgumentError("p and theta must lie in [0, 1]");
  }
  // i subsets truly reject; each report is flipped independently, so the
  // number of "reject" reports is Poisson-binomial with i entries p and
  // m - i entries 1 - p.
  const std::vector<double> outer = BinomialPmfVector(m, theta);
  const std::size_t need = (m + 1) / 2;
  double total = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    if (outer[i] == 0.0) continue;
    std::vector<double> probs(m, 1.0 - p);
    std::fill(probs.begin(), probs.begin() + i, p);
    TOT_ASSIGN_OR_RETURN(SuccessVector sv, SuccessVector::Create(probs));
    const std::vector<double> pmf = PoissonBinomialPmfVector(sv);
    double upper = 0.0;
    for (std::size_t j = need; j <= m; ++j) upper += pmf[j];
    total += outer[i] * upper;
  }
  return ClampProbability(total);
}

double RandomizedResponseKeepProbability(double epsilon) {
  return 1.0 / (1.0 + std::exp(-epsilon));
}

absl::StatusOr<PbComparison> ComparePb(std::size_t m, double alpha0,
                                       double epsilon, double alpha,
                                       const std::vector<double>& theta_grid,
                                       double slack) {
  TOT_RETURN_IF_ERROR(CheckEpsilon(epsilon));
  TOT_RETURN_IF_ERROR(CheckOpenUnit(alpha, "alpha"));
  TOT_RETURN_IF_ERROR(CheckOpenUnit(alpha0, "alpha0"));
  const double p = RandomizedResponseKeepProbability(epsilon);
  PbComparison out;
  TOT_ASSIGN_OR_RETURN(out.pb_null_rejection, PbPower(m, p, alpha0));
  out.pb_level_scale =
      out.pb_null_rejection > alpha ? alpha / out.pb_null_rejection : 1.0;
  for (double theta : theta_grid) {
    PbComparisonRow row;
    row.theta = theta;
    TOT_ASSIGN_OR_RETURN(row.pb_raw_power, PbPower(m, p, theta));
    row.pb_power = out.pb_level_scale * row.pb_raw_power;
    TOT_ASSIGN_OR_RETURN(row.tot_power,
                         TotPower({epsilon, alpha, m, alpha0, theta}));
    // Below alpha0 both tests sit under their level and optimality says
    // nothing; only the alternative region is compared.
    if (theta >= alpha0 && row.tot_power + slack < row.pb_power) {
      out.tot_dominates = false;
    }
    out.rows.push_back(row);
  }
  return out;
}

absl::StatusOr<bool> PbDominanceCheck(std::size_t m, double alpha0,
                                      double epsilon, double alpha,
                                      const std::vector<double>& theta_grid) {
  TOT_ASSIGN_OR_RETURN(PbComparison cmp,
                       ComparePb(m, alpha0, epsilon, alpha, theta_grid));
  return cmp.tot_dominates;
}

absl::Status CanonneQuery::Validate() const {
  if (n < 1 || d < 1) return absl::InvalidArgumentError("n and d must be >= 1");
  TOT_RETURN_IF_ERROR(CheckEpsilon(epsilon));
  TOT_RETURN_IF_ERROR(CheckOpenUnit(delta, "delta"));
  if (!(gamma > 0.0)) return absl::InvalidArgumentError("gamma must be > 0");
  return absl::OkStatus();
}

double CanonneAlwaysRejectThreshold(std::size_t d, double epsilon,
                                    double delta) {
  const double dd = static_cast<double>(d);
  return std::max(25.0 * std::log(dd / delta),
                  5.0 / epsilon * std::log(1.0 / delta));
}

double CanonneDeltaG(const CanonneQuery& q) {
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  const double eps = q.epsilon;
  const double log_d = std::log(d / q.delta);
  const double log_n = std::log(n / q.delta);
  const double log_inv = std::log(1.0 / q.delta);
  const double inner = d * log_d + d / (n * eps * eps) * log_inv * log_inv +
                       std::sqrt(n * d) * std::sqrt(log_d * log_n) +
                       std::sqrt(d) / eps * log_inv * std::sqrt(log_n);
  return 144.0 * inner * std::log(n * d / q.delta);
}

double CanonneLaplaceScale(const CanonneQuery& q) {
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  const double eps = q.epsilon;
  const double second = 432.0 * d / eps * std::log(n * d / q.delta) *
                        std::sqrt(std::log(n / q.delta) *
                                  std::log(5.0 / (4.0 * q.delta)));
  return (5.0 * CanonneDeltaG(q) + second) / eps;
}

absl::StatusOr<double> CanonneType1LowerBound(const CanonneQuery& query) {
  TOT_RETURN_IF_ERROR(query.Validate());
  const double n = static_cast<double>(query.n);
  if (n <= CanonneAlwaysRejectThreshold(query.d, query.epsilon, query.delta)) {
    return 1.0;
  }
  const double t = n * n * query.gamma * query.gamma / 324.0;
  const double sigma = n * std::sqrt(2.0 * static_cast<double>(query.d));
  // 1 - F(t) = F(-t) by symmetry; avoids cancellation when the bound is small.
  return NormalLaplaceCdf(-t, sigma, CanonneLaplaceScale(query));
}

}  // namespace tot
