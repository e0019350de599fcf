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

// Seeded Monte Carlo estimates of rejection rates and p-value uniformity for
// the test of tests, a bare public test, or the PB randomized-response
// aggregator. Replicate r draws everything from streams derived from
// (seed, r), so results do not depend on thread count or scheduling.

#ifndef TOT_SRC_SIM_HARNESS_H_
#define TOT_SRC_SIM_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "src/dataset.h"
#include "src/effect.h"
#include "src/public_tests.h"
#include "src/rng.h"

namespace tot {

enum class GeneratorFamily {
  kNormal,          // n rows of N(mu, 1)
  kAnova,           // g equal-as-possible groups, N(mu_k, 1)
  kMvn,             // n rows of N_d(mu, I)
  kPValueMixture,   // n p-values: U(0, a0) w.p. theta, else U(a0, 1)
};

struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::kNormal;
  std::size_t n = 0;
  // StandardizedMean for kNormal, AnovaEffect for kAnova, MeanVector for
  // kMvn; ignored for kPValueMixture.
  EffectSpec effect = StandardizedMean{0.0};
  // kPValueMixture only.
  double theta = 0.0;
  double mixture_alpha0 = 0.05;

  absl::Status Validate() const;
  // True when the data come from the null of the matching public test.
  bool IsNull() const;
};

absl::StatusOr<GeneratorFamily> ParseGeneratorFamily(std::string_view name);

// Group means with population variance eta: sqrt(eta) times a centred,
// evenly spaced pattern of unit population variance.
std::vector<double> AnovaGroupMeans(double eta, int groups);

absl::StatusOr<Dataset> GenerateDataset(const GeneratorSpec& spec, Rng& rng);

// Treats each row's value as a p-value; the subset p-value is the first
// row's. Paired with kPValueMixture and n = m it is a sub-test that rejects
// independently with probability theta.
class PValuePassThroughTest final : public PublicTest {
 public:
  std::string_view name() const override { return "pvalue"; }
  std::size_t MinSampleSize() const override { return 1; }
  absl::Status CheckCompatible(const Dataset& data) const override;
  std::optional<double> PValue(const Dataset& subset) const override;
  absl::StatusOr<double> Power(std::size_t n, const EffectSpec& effect,
                               double alpha0) const override;
};

enum class EngineKind { kTot, kPublic, kPb };

absl::StatusOr<EngineKind> ParseEngineKind(std::string_view name);

struct EngineSpec {
  EngineKind kind = EngineKind::kTot;
  // Not owned. Must outlive the simulation.
  const PublicTest* test = nullptr;
  double epsilon = 1.0;
  double alpha = 0.05;
  std::size_t m = 1;
  double alpha0 = 0.05;
  // kPb only: probability that a subset's decision is reported truthfully.
  double pb_keep_probability = 1.0;
};

struct SimPlan {
  GeneratorSpec generator;
  EngineSpec engine;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0 = hardware concurrency

  absl::Status Validate() const;
};

struct SimResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t rejections = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

// sqrt(p (1 - p) / replicates).
double BinomialStandardError(double estimate, std::size_t replicates);

absl::StatusOr<SimResult> EstimateRejectionRate(const SimPlan& plan);

enum class UniformityCheck {
  kTwoSided,      // sup |F_N(x) - x|
  kSuperUniform,  // sup (F_N(x) - x): p-values may only be conservative
};

struct UniformityResult {
  double statistic = 0.0;
  double threshold = 0.0;  // critical value at level 1e-3 for this N
  bool pass = false;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

// Level of the uniformity checks.
inline constexpr double kUniformityLevel = 1e-3;

// Asymptotic Kolmogorov critical values c with P(sqrt(N) D > c) = level.
double KolmogorovTwoSidedCritical(double level);
double KolmogorovOneSidedCritical(double level);

// Requires a null generator and an engine that produces p-values.
absl::StatusOr<UniformityResult> EstimatePValueUniformity(
    const SimPlan& plan, UniformityCheck check = UniformityCheck::kTwoSided);

}  // namespace tot

#endif  // TOT_SRC_SIM_HARNESS_H_
