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

#include "src/optimizer.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "src/parallel.h"
#include "src/power_analysis.h"
#include "src/status_macros.h"

namespace tot {
namespace {

constexpr double kAlpha0Min = 1e-6;
constexpr double kAlpha0Max = 1.0 - 1e-6;
constexpr int kCoarsePoints = 12;
constexpr int kGoldenIterations = 60;
constexpr double kLogitTolerance = 1e-7;

double Logit(double p) { return std::log(p / (1.0 - p)); }
double Expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// (power, m, alpha0) ordering: higher power first, then smaller m, then
// smaller alpha0.
bool Better(const Candidate& a, const Candidate& b) {
  if (a.power != b.power) return a.power > b.power;
  if (a.m != b.m) return a.m < b.m;
  return a.alpha0 < b.alpha0;
}

absl::StatusOr<Candidate> Evaluate(const PublicTest& test, std::size_t n,
                                   const EffectSpec& effect, double epsilon,
                                   double alpha, std::size_t m, double alpha0) {
  Candidate c{m, alpha0, 0.0, 0.0};
  TOT_ASSIGN_OR_RETURN(c.theta, test.Power(n / m, effect, alpha0));
  TOT_ASSIGN_OR_RETURN(c.power,
                       TotPower({epsilon, alpha, m, alpha0, c.theta}));
  return c;
}

// Best alpha0 for one m: a coarse logit grid guards against multiple modes,
// then golden-section refines between the neighbours of the best grid point.
absl::StatusOr<Candidate> BestAlpha0(const PublicTest& test, std::size_t n,
                                     const EffectSpec& effect, double epsilon,
                                     double alpha, std::size_t m) {
  const double lo = Logit(kAlpha0Min);
  const double hi = Logit(kAlpha0Max);
  const double step = (hi - lo) / (kCoarsePoints - 1);
  Candidate best;
  int best_index = -1;
  for (int i = 0; i < kCoarsePoints; ++i) {
    TOT_ASSIGN_OR_RETURN(
        Candidate c, Evaluate(test, n, effect, epsilon, alpha, m,
                              Expit(lo + step * i)));
    if (best_index < 0 || Better(c, best)) {
      best = c;
      best_index = i;
    }
  }
  double a = lo + step * std::max(best_index - 1, 0);
  double b = lo + step * std::min(best_index + 1, kCoarsePoints - 1);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  TOT_ASSIGN_OR_RETURN(Candidate c1,
                       Evaluate(test, n, effect, epsilon, alpha, m, Expit(x1)));
  TOT_ASSIGN_OR_RETURN(Candidate c2,
                       Evaluate(test, n, effect, epsilon, alpha, m, Expit(x2)));
  for (int it = 0; it < kGoldenIterations && b - a > kLogitTolerance; ++it) {
    if (c1.power >= c2.power) {
      b = x2;
      x2 = x1;
      c2 = c1;
      x1 = b - ratio * (b - a);
      TOT_ASSIGN_OR_RETURN(
          c1, Evaluate(test, n, effect, epsilon, alpha, m, Expit(x1)));
    } else {
      a = x1;
      x1 = x2;
      c1 = c2;
      x2 = a + ratio * (b - a);
      TOT_ASSIGN_OR_RETURN(
          c2, Evaluate(test, n, effect, epsilon, alpha, m, Expit(x2)));
    }
  }
  for (const Candidate* c : {&c1, &c2}) {
    if (Better(*c, best)) best = *c;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> MCandidates(std::size_t n) {
  std::vector<std::size_t> out;
  if (n == 0) return out;
  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  for (std::size_t m = 1; m <= root; ++m) out.push_back(m);
  const std::size_t third = n / 3;
  if (third > root) {
    constexpr int kGeometric = 24;
    const double ratio = std::pow(static_cast<double>(third) / root, 1.0 / kGeometric);
    for (int i = 1; i < kGeometric; ++i) {
      out.push_back(static_cast<std::size_t>(std::llround(root * std::pow(ratio, i))));
    }
  }
  for (std::size_t m : {third, n / 2, n}) {
    if (m >= 1) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

absl::StatusOr<OptimizerResult> OptimizeKnownEffect(const PublicTest& test,
                                                    std::size_t n,
                                                    const EffectSpec& effect,
                                                    double epsilon,
                                                    double alpha) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  TOT_RETURN_IF_ERROR((PowerQuery{epsilon, alpha, 1, 0.5, 0.5}.Validate()));
  const std::vector<std::size_t> ms = MCandidates(n);
  std::vector<absl::StatusOr<Candidate>> found(ms.size(),
                                               absl::UnknownError("unset"));
  ParallelFor(ms.size(), [&](std::size_t i) {
    found[i] = BestAlpha0(test, n, effect, epsilon, alpha, ms[i]);
  });
  OptimizerResult result;
  const Candidate* best = nullptr;
  for (const auto& c : found) {
    if (!c.ok()) return c.status();
    result.certificates.push_back(*c);
  }
  for (const Candidate& c : result.certificates) {
    if (best == nullptr || Better(c, *best)) best = &c;
  }
  result.m = best->m;
  result.alpha0 = best->alpha0;
  result.theta = best->theta;
  result.achieved_power = best->power;
  result.degenerate = IsNullEffect(effect);
  return result;
}

absl::StatusOr<OptimizerResult> OptimizeTargetPower(
    const PublicTest& test, std::size_t n, double epsilon, double alpha,
    double rho, const std::vector<EffectSpec>& effect_grid) {
  if (effect_grid.empty()) {
    return absl::InvalidArgumentError("effect grid is empty");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("target power must lie in (0, 1), got ", rho));
  }
  auto at = [&](std::size_t i) {
    return OptimizeKnownEffect(test, n, effect_grid[i], epsilon, alpha);
  };
  std::size_t hi = effect_grid.size() - 1;
  TOT_ASSIGN_OR_RETURN(OptimizerResult best, at(hi));
  if (best.achieved_power < rho) {
    best.target_reached = false;
    best.min_detectable_effect.reset();
    best.min_detectable_index.reset();
    return best;
  }
  // Invariant: grid[hi] reaches rho; every index below lo does not.
  std::size_t lo = 0;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    TOT_ASSIGN_OR_RETURN(OptimizerResult r, at(mid));
    if (r.achieved_power >= rho) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  best.min_detectable_effect = effect_grid[hi];
  best.min_detectable_index = hi;
  best.target_reached = true;
  return best;
}

std::vector<EffectSpec> GeometricEffectGrid(const EffectSpec& base, double lo,
                                            double hi, std::size_t count) {
  std::vector<EffectSpec> grid;
  if (count == 0) return grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = count == 1 ? lo
                                : lo * std::pow(hi / lo, static_cast<double>(i) /
                                                             (count - 1));
    grid.push_back(ScaleEffect(base, s));
  }
  return grid;
}

absl::StatusOr<PowerEvaluation> EvaluateTotPower(const PublicTest& test,
                                                 std::size_t n,
                                                 const EffectSpec& effect,
                                                 double epsilon, double alpha,
                                                 std::size_t m, double alpha0) {
  if (m < 1 || m > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= m <= n, got m=", m, " n=", n));
  }
  TOT_ASSIGN_OR_RETURN(Candidate c,
                       Evaluate(test, n, effect, epsilon, alpha, m, alpha0));
  return PowerEvaluation{c.theta, c.power};
}

}  // namespace tot
