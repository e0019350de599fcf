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

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "src/distributions.h"
#include "src/status_macros.h"

namespace tot {
namespace {

absl::Status ValidateEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  return absl::OkStatus();
}

// sum_i pmf(i) * TulapCdf_0(sign * (t - i)). All shifted arguments share the
// same fractional offset, so only the integer cell moves with i.
double MixTulap(double t, std::size_t m, double p, double epsilon, double sign) {
  const double b = std::exp(-epsilon);
  const std::vector<double> pmf = BinomialPmfVector(m, p);
  const double y0 = sign * t;
  const double k0 = std::floor(y0 + 0.5);
  const double u = y0 - k0 + 0.5;
  const double lower_coef = (b + u * (1.0 - b)) / (1.0 + b);
  const double upper_coef = (b + (1.0 - u) * (1.0 - b)) / (1.0 + b);
  double total = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    if (pmf[i] == 0.0) continue;
    const double k = k0 - sign * static_cast<double>(i);
    const double f = k <= 0 ? std::pow(b, -k) * lower_coef
                            : 1.0 - std::pow(b, k) * upper_coef;
    total += pmf[i] * f;
  }
  return ClampProbability(total);
}

}  // namespace

double NoisyBinomialCdf(double t, std::size_t m, double p, double epsilon) {
  if (std::isinf(t)) return t < 0 ? 0.0 : 1.0;
  return MixTulap(t, m, p, epsilon, 1.0);
}

double NoisyBinomialSf(double t, std::size_t m, double p, double epsilon) {
  if (std::isinf(t)) return t < 0 ? 1.0 : 0.0;
  // P(i + N >= t) = P(N <= i - t) by symmetry of N.
  return MixTulap(t, m, p, epsilon, -1.0);
}

absl::StatusOr<PrivateCount> PrivatizeCount(long long a, std::size_t m,
                                            double epsilon, Rng& rng) {
  TOT_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (a < 0 || a > static_cast<long long>(m)) {
    return absl::OutOfRangeError(
        absl::StrCat("rejection count ", a, " outside 0..", m));
  }
  TOT_ASSIGN_OR_RETURN(const TulapParams noise,
                       TulapParams::FromEpsilon(static_cast<double>(a), epsilon));
  return PrivateCount{TulapSample(noise, rng), m, epsilon};
}

absl::StatusOr<double> PrivateBinomialPValue(const PrivateCount& pc,
                                             double alpha0) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha0 must lie in (0, 1), got ", alpha0));
  }
  TOT_RETURN_IF_ERROR(ValidateEpsilon(pc.epsilon));
  if (pc.m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (std::isnan(pc.z)) return absl::InvalidArgumentError("z is NaN");
  return NoisyBinomialSf(pc.z, pc.m, alpha0, pc.epsilon);
}

}  // namespace tot
