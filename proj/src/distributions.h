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

// Special-function layer: Tulap noise, binomial and Poisson-binomial mass
// functions, noncentral chi-square / F / t distributions and the CDF of a
// normal plus Laplace sum.
//
// Every probability returned here is clamped to [0, 1].

#ifndef TOT_SRC_DISTRIBUTIONS_H_
#define TOT_SRC_DISTRIBUTIONS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "src/rng.h"

namespace tot {

// Tulap(location, scale) with the truncation parameter fixed at zero, i.e.
// a discrete Laplace variate with P(L = k) proportional to scale^|k| plus an
// independent Uniform(-1/2, 1/2).
class TulapParams {
 public:
  // Fails unless 0 < scale < 1 and location is finite.
  static absl::StatusOr<TulapParams> Create(double location, double scale);

  // scale = exp(-epsilon), epsilon > 0.
  static absl::StatusOr<TulapParams> FromEpsilon(double location,
                                                 double epsilon);

  double location() const { return location_; }
  double scale() const { return scale_; }

 private:
  TulapParams(double location, double scale)
      : location_(location), scale_(scale) {}

  double location_;
  double scale_;
};

double TulapCdf(double x, const TulapParams& params);

// Upper tail P(N > x), computed without forming 1 - cdf.
double TulapSf(double x, const TulapParams& params);

// Inverse of TulapCdf. p must lie strictly inside (0, 1).
absl::StatusOr<double> TulapQuantile(double p, const TulapParams& params);

double TulapSample(const TulapParams& params, Rng& rng);

// Probability mass at i and P(X <= i) for X ~ Binomial(m, p).
absl::StatusOr<std::pair<double, double>> BinomialPmfCdf(long long i,
                                                         long long m,
                                                         double p);

// Full pmf vector of Binomial(m, p), indices 0..m. Inputs are not validated.
std::vector<double> BinomialPmfVector(std::size_t m, double p);

class SuccessVector {
 public:
  static absl::StatusOr<SuccessVector> Create(std::vector<double> probs);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  explicit SuccessVector(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

absl::StatusOr<double> PoissonBinomialPmf(long long j, const SuccessVector& sv);

// All masses 0..size() by iterative convolution.
std::vector<double> PoissonBinomialPmfVector(const SuccessVector& sv);

enum class NoncentralFamily { kChiSquare, kF, kT };

class NoncentralParams {
 public:
  // df2 is only read for kF. For kT the noncentrality is the mean shift
  // delta of the numerator normal; for kChiSquare and kF it is lambda.
  static absl::StatusOr<NoncentralParams> Create(NoncentralFamily family,
                                                 double df1, double df2,
                                                 double noncentrality);

  NoncentralFamily family() const { return family_; }
  double df1() const { return df1_; }
  double df2() const { return df2_; }
  double noncentrality() const { return noncentrality_; }

 private:
  NoncentralParams(NoncentralFamily family, double df1, double df2,
                   double noncentrality)
      : family_(family), df1_(df1), df2_(df2), noncentrality_(noncentrality) {}

  NoncentralFamily family_;
  double df1_;
  double df2_;
  double noncentrality_;
};

double NoncentralCdf(double x, const NoncentralParams& params);
double NoncentralSf(double x, const NoncentralParams& params);

// Noncentral t with a possibly negative shift; used for two-sided power.
double NoncentralTCdf(double x, double df, double delta);

// CDF of Z + L with Z ~ N(0, sigma^2) and L ~ Laplace(0, b_lap).
absl::StatusOr<double> NormalLaplaceCdf(double t, double sigma, double b_lap);

// Scaled complementary error function e^{y^2} erfc(y).
double Erfcx(double y);

// Central distributions.
double NormalCdf(double x);
double NormalSf(double x);
double NormalQuantile(double p);
double ChiSquareSf(double x, double df);
double ChiSquareUpperQuantile(double tail, double df);
double StudentTSf(double x, double df);
double StudentTUpperQuantile(double tail, double df);
double FisherFSf(double x, double df1, double df2);
double FisherFUpperQuantile(double tail, double df1, double df2);

inline double ClampProbability(double p) {
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

}  // namespace tot

#endif  // TOT_SRC_DISTRIBUTIONS_H_
