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

#include "src/distributions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/math/distributions/fisher_f.hpp"
#include "boost/math/distributions/students_t.hpp"
#include "boost/math/special_functions/beta.hpp"
#include "boost/math/special_functions/erf.hpp"
#include "boost/math/special_functions/gamma.hpp"

namespace tot {
namespace {

namespace bm = ::boost::math;

using MathPolicy = bm::policies::policy<
    bm::policies::domain_error<bm::policies::errno_on_error>,
    bm::policies::overflow_error<bm::policies::errno_on_error>,
    bm::policies::evaluation_error<bm::policies::errno_on_error>,
    bm::policies::promote_double<false>>;

constexpr double kPoissonTailMass = 1e-13;

// Tulap(0, b) CDF. The branch is chosen so that the returned quantity never
// comes from subtracting two numbers close to one in the lower tail.
double StandardTulapCdf(double y, double b) {
  if (std::isinf(y)) return y < 0 ? 0.0 : 1.0;
  const double k = std::floor(y + 0.5);
  const double u = y - k + 0.5;
  if (k <= 0) {
    return ClampProbability(std::pow(b, -k) / (1.0 + b) *
                            (b + u * (1.0 - b)));
  }
  return ClampProbability(1.0 - std::pow(b, k) / (1.0 + b) *
                                    (b + (1.0 - u) * (1.0 - b)));
}

// Lower-half inverse of the standard Tulap CDF, q in (0, 1/2].
double StandardTulapLowerQuantile(double q, double b) {
  const double rate = -std::log(b);
  double k = std::ceil(std::log(q * (1.0 + b)) / rate);
  k = std::min(k, 0.0);
  double u = (q * (1.0 + b) * std::exp(-k * rate) - b) / (1.0 - b);
  u = std::clamp(u, 0.0, 1.0);
  return k - 0.5 + u;
}

// Sum over k of Poisson(k; mean) * term(k), walking outward from the mode.
// The upward walk stops once the accumulated Poisson weight leaves less than
// kPoissonTailMass unaccounted for.
template <typename Term>
double PoissonMixture(double mean, Term term) {
  if (mean <= 0.0) return term(0.0);
  const double mode = std::floor(mean);
  const double log_mean = std::log(mean);
  const double w_mode = std::exp(-mean + mode * log_mean - std::lgamma(mode + 1));

  double sum = w_mode * term(mode);
  double mass = w_mode;

  double w = w_mode;
  for (double k = mode; k > 0;) {
    w *= k / mean;
    k -= 1;
    sum += w * term(k);
    mass += w;
    if (w < 1e-17 * w_mode && w < kPoissonTailMass * 1e-3) break;
  }
  w = w_mode;
  const double cap = mode + 50.0 * std::sqrt(mean + 1.0) + 1000.0;
  for (double k = mode + 1; k <= cap; k += 1) {
    w *= mean / k;
    sum += w * term(k);
    mass += w;
    if (1.0 - mass < kPoissonTailMass || w == 0.0) break;
  }
  return sum;
}

double NonnegativeNoncentralTCdf(double x, double df, double delta) {
  // x >= 0. Series in regularized incomplete beta functions with Poisson
  // weights in delta^2 / 2.
  const double y = x * x / (x * x + df);
  const double half_df = 0.5 * df;
  const double shift = delta / std::numbers::sqrt2;
  const double series = PoissonMixture(0.5 * delta * delta, [&](double j) {
    double term = bm::ibeta(j + 0.5, half_df, y, MathPolicy());
    if (shift != 0.0) {
      term += shift * bm::tgamma_delta_ratio(j + 1.0, 0.5, MathPolicy()) *
              bm::ibeta(j + 1.0, half_df, y, MathPolicy());
    }
    return term;
  });
  return NormalCdf(-delta) + 0.5 * series;
}

}  // namespace

absl::StatusOr<TulapParams> TulapParams::Create(double location,
                                                double scale) {
  if (!std::isfinite(location)) {
    return absl::InvalidArgumentError("Tulap location must be finite");
  }
  if (!(scale > 0.0 && scale < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Tulap scale must lie in (0, 1), got ", scale));
  }
  return TulapParams(location, scale);
}

absl::StatusOr<TulapParams> TulapParams::FromEpsilon(double location,
                                                     double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  return Create(location, std::exp(-epsilon));
}

double TulapCdf(double x, const TulapParams& params) {
  return StandardTulapCdf(x - params.location(), params.scale());
}

double TulapSf(double x, const TulapParams& params) {
  return StandardTulapCdf(params.location() - x, params.scale());
}

absl::StatusOr<double> TulapQuantile(double p, const TulapParams& params) {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("Tulap quantile is unbounded at p = ", p));
  }
  const double b = params.scale();
  if (p <= 0.5) return params.location() + StandardTulapLowerQuantile(p, b);
  return params.location() - StandardTulapLowerQuantile(1.0 - p, b);
}

double TulapSample(const TulapParams& params, Rng& rng) {
  // Difference of two geometric variates (failures before the first
  // success, success probability 1 - b) drawn by inversion.
  const double log_b = std::log(params.scale());
  const double g1 = std::floor(std::log(UniformOpen(rng)) / log_b);
  const double g2 = std::floor(std::log(UniformOpen(rng)) / log_b);
  const double uniform = UniformDouble(rng) - 0.5;
  return params.location() + (g1 - g2) + uniform;
}

std::vector<double> BinomialPmfVector(std::size_t m, double p) {
  std::vector<double> pmf(m + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[m] = 1.0;
    return pmf;
  }
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_m_fact = std::lgamma(static_cast<double>(m) + 1.0);
  for (std::size_t i = 0; i <= m; ++i) {
    const double di = static_cast<double>(i);
    const double dm = static_cast<double>(m);
    pmf[i] = std::exp(log_m_fact - std::lgamma(di + 1.0) -
                      std::lgamma(dm - di + 1.0) + di * log_p +
                      (dm - di) * log_q);
  }
  return pmf;
}

absl::StatusOr<std::pair<double, double>> BinomialPmfCdf(long long i,
                                                         long long m,
                                                         double p) {
  if (m < 0) return absl::InvalidArgumentError("trial count must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("success probability must lie in [0, 1], got ", p));
  }
  if (i < 0 || i > m) {
    return absl::OutOfRangeError(
        absl::StrCat("binomial index ", i, " outside 0..", m));
  }
  const std::vector<double> pmf =
      BinomialPmfVector(static_cast<std::size_t>(m), p);
  double cdf = 0.0;
  for (long long k = 0; k <= i; ++k) cdf += pmf[static_cast<std::size_t>(k)];
  if (i == m) cdf = 1.0;
  return std::make_pair(pmf[static_cast<std::size_t>(i)],
                        ClampProbability(cdf));
}

absl::StatusOr<SuccessVector> SuccessVector::Create(std::vector<double> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("success vector must be non-empty");
  }
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("success probability outside [0, 1]: ", p));
    }
  }
  return SuccessVector(std::move(probs));
}

std::vector<double> PoissonBinomialPmfVector(const SuccessVector& sv) {
  std::vector<double> pmf(sv.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t filled = 0;
  for (double p : sv.probs()) {
    ++filled;
    for (std::size_t j = filled; j > 0; --j) {
      pmf[j] = pmf[j] * (1.0 - p) + pmf[j - 1] * p;
    }
    pmf[0] *= 1.0 - p;
  }
  for (double& v : pmf) v = ClampProbability(v);
  return pmf;
}

absl::StatusOr<double> PoissonBinomialPmf(long long j, const SuccessVector& sv) {
  if (j < 0 || j > static_cast<long long>(sv.size())) {
    return absl::OutOfRangeError(
        absl::StrCat("Poisson-binomial index ", j, " outside 0..", sv.size()));
  }
  return PoissonBinomialPmfVector(sv)[static_cast<std::size_t>(j)];
}

absl::StatusOr<NoncentralParams> NoncentralParams::Create(
    NoncentralFamily family, double df1, double df2, double noncentrality) {
  if (!(df1 >= 1.0) || !std::isfinite(df1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("degrees of freedom must be >= 1, got ", df1));
  }
  if (family == NoncentralFamily::kF && (!(df2 >= 1.0) || !std::isfinite(df2))) {
    return absl::InvalidArgumentError(
        absl::StrCat("denominator degrees of freedom must be >= 1, got ", df2));
  }
  if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "noncentrality must be finite and >= 0, got ", noncentrality));
  }
  return NoncentralParams(family, df1, df2, noncentrality);
}

double NoncentralTCdf(double x, double df, double delta) {
  if (std::isnan(x)) return x;
  if (std::isinf(x)) return x < 0 ? 0.0 : 1.0;
  if (delta == 0.0) return ClampProbability(1.0 - StudentTSf(x, df));
  if (x >= 0.0) return ClampProbability(NonnegativeNoncentralTCdf(x, df, delta));
  return ClampProbability(1.0 - NonnegativeNoncentralTCdf(-x, df, -delta));
}

double NoncentralCdf(double x, const NoncentralParams& params) {
  const double lambda = params.noncentrality();
  switch (params.family()) {
    case NoncentralFamily::kChiSquare: {
      if (!(x > 0.0)) return std::isnan(x) ? x : 0.0;
      if (std::isinf(x)) return 1.0;
      const double half_df = 0.5 * params.df1();
      return ClampProbability(PoissonMixture(0.5 * lambda, [&](double k) {
        return bm::gamma_p(half_df + k, 0.5 * x, MathPolicy());
      }));
    }
    case NoncentralFamily::kF: {
      if (!(x > 0.0)) return std::isnan(x) ? x : 0.0;
      if (std::isinf(x)) return 1.0;
      const double d1 = params.df1();
      const double d2 = params.df2();
      const double y = d1 * x / (d1 * x + d2);
      return ClampProbability(PoissonMixture(0.5 * lambda, [&](double k) {
        return bm::ibeta(0.5 * d1 + k, 0.5 * d2, y, MathPolicy());
      }));
    }
    case NoncentralFamily::kT:
      return NoncentralTCdf(x, params.df1(), lambda);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double NoncentralSf(double x, const NoncentralParams& params) {
  const double lambda = params.noncentrality();
  switch (params.family()) {
    case NoncentralFamily::kChiSquare: {
      if (!(x > 0.0)) return std::isnan(x) ? x : 1.0;
      if (std::isinf(x)) return 0.0;
      const double half_df = 0.5 * params.df1();
      return ClampProbability(PoissonMixture(0.5 * lambda, [&](double k) {
        return bm::gamma_q(half_df + k, 0.5 * x, MathPolicy());
      }));
    }
    case NoncentralFamily::kF: {
      if (!(x > 0.0)) return std::isnan(x) ? x : 1.0;
      if (std::isinf(x)) return 0.0;
      const double d1 = params.df1();
      const double d2 = params.df2();
      const double y = d1 * x / (d1 * x + d2);
      return ClampProbability(PoissonMixture(0.5 * lambda, [&](double k) {
        return bm::ibetac(0.5 * d1 + k, 0.5 * d2, y, MathPolicy());
      }));
    }
    case NoncentralFamily::kT:
      // T(df, delta) has the law of -T(df, -delta).
      return NoncentralTCdf(-x, params.df1(), -lambda);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

absl::StatusOr<double> NormalLaplaceCdf(double t, double sigma, double b_lap) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("normal scale must be positive, got ", sigma));
  }
  if (!(b_lap > 0.0) || !std::isfinite(b_lap)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", b_lap));
  }
  if (std::isnan(t)) return absl::InvalidArgumentError("t is NaN");
  if (std::isinf(t)) return t < 0 ? 0.0 : 1.0;

  // Closed form with x = |t| / sigma and r = sigma / b:
  //   1 - F(|t|) = Phi(-x) + (A - C) / 2,
  //   A = e^{r^2/2 - x r} Phi(x - r),  C = e^{r^2/2 + x r} Phi(-x - r).
  // Both products equal 1/2 e^{-x^2/2} erfcx(.) when the erfcx argument is
  // positive, which keeps them finite for any r.
  const double x = std::abs(t) / sigma;
  const double r = sigma / b_lap;
  const double gauss = std::exp(-0.5 * x * x);
  const double a = r > x ? 0.5 * gauss * Erfcx((r - x) / std::numbers::sqrt2)
                         : std::exp(r * (0.5 * r - x)) * NormalCdf(x - r);
  const double c = 0.5 * gauss * Erfcx((r + x) / std::numbers::sqrt2);
  const double sf = ClampProbability(NormalSf(x) + 0.5 * (a - c));
  return t >= 0.0 ? 1.0 - sf : sf;
}

double Erfcx(double y) {
  if (y < 0.0) {
    // erfcx(-y) = 2 e^{y^2} - erfcx(y); overflows only where e^{y^2} does.
    return 2.0 * std::exp(y * y) - Erfcx(-y);
  }
  if (y < 25.0) return std::exp(y * y) * std::erfc(y);
  // Asymptotic series; at y >= 25 the seventh term is below 1e-16 relative.
  const double inv2 = 1.0 / (2.0 * y * y);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 7; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    sum += term;
  }
  return sum / (y * std::sqrt(std::numbers::pi));
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double NormalSf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double NormalQuantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::numbers::sqrt2 * bm::erfc_inv(2.0 * p, MathPolicy());
}

double ChiSquareSf(double x, double df) {
  if (!(x > 0.0)) return std::isnan(x) ? x : 1.0;
  if (std::isinf(x)) return 0.0;
  return bm::gamma_q(0.5 * df, 0.5 * x, MathPolicy());
}

double ChiSquareUpperQuantile(double tail, double df) {
  if (tail >= 1.0) return 0.0;
  if (tail <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * bm::gamma_q_inv(0.5 * df, tail, MathPolicy());
}

double StudentTSf(double x, double df) {
  if (std::isnan(x)) return x;
  if (std::isinf(x)) return x < 0 ? 1.0 : 0.0;
  const bm::students_t_distribution<double, MathPolicy> dist(df);
  return bm::cdf(bm::complement(dist, x));
}

double StudentTUpperQuantile(double tail, double df) {
  if (tail <= 0.0) return std::numeric_limits<double>::infinity();
  if (tail >= 1.0) return -std::numeric_limits<double>::infinity();
  const bm::students_t_distribution<double, MathPolicy> dist(df);
  return bm::quantile(bm::complement(dist, tail));
}

double FisherFSf(double x, double df1, double df2) {
  if (!(x > 0.0)) return std::isnan(x) ? x : 1.0;
  if (std::isinf(x)) return 0.0;
  const bm::fisher_f_distribution<double, MathPolicy> dist(df1, df2);
  return bm::cdf(bm::complement(dist, x));
}

double FisherFUpperQuantile(double tail, double df1, double df2) {
  if (tail >= 1.0) return 0.0;
  if (tail <= 0.0) return std::numeric_limits<double>::infinity();
  const bm::fisher_f_distribution<double, MathPolicy> dist(df1, df2);
  return bm::quantile(bm::complement(dist, tail));
}

}  // namespace tot
