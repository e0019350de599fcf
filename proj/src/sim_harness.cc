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

#include "src/sim_harness.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "absl/strings/str_cat.h"
#include "src/parallel.h"
#include "src/status_macros.h"
#include "src/test_of_tests.h"

namespace tot {
namespace {

// Streams under each replicate's seed.
constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kEngineStream = 1;
constexpr std::uint64_t kPublicFallbackStream = 2;
constexpr std::uint64_t kPbStream = 3;

bool InOpenUnit(double x) { return x > 0.0 && x < 1.0; }

struct Outcome {
  bool reject = false;
  double p_value = 1.0;  // unused by the PB engine
};

// One replicate: draws data and runs the engine.
absl::StatusOr<Outcome> RunReplicate(const SimPlan& plan, std::size_t r) {
  const std::uint64_t rep_seed = DeriveSeed(plan.seed, r);
  Rng data_rng = MakeRng(rep_seed, kDataStream);
  TOT_ASSIGN_OR_RETURN(Dataset data, GenerateDataset(plan.generator, data_rng));
  const EngineSpec& e = plan.engine;
  const PublicTest& test = *e.test;
  Outcome out;
  switch (e.kind) {
    case EngineKind::kTot: {
      ToTConfig config{e.epsilon, e.alpha, e.m, e.alpha0,
                       DeriveSeed(rep_seed, kEngineStream)};
      TOT_ASSIGN_OR_RETURN(ToTResult res, RunTot(data, test, config));
      out.reject = res.reject;
      out.p_value = res.p_value;
      return out;
    }
    case EngineKind::kPublic: {
      std::optional<double> p;
      if (data.rows() >= test.MinSampleSize()) p = test.PValue(data);
      if (!p.has_value()) {
        Rng fallback = MakeRng(rep_seed, kPublicFallbackStream);
        p = UniformDouble(fallback);
      }
      out.p_value = *p;
      out.reject = *p < e.alpha;
      return out;
    }
    case EngineKind::kPb: {
      Rng rng = MakeRng(rep_seed, kPbStream);
      TOT_ASSIGN_OR_RETURN(auto subsets, Partition(data, e.m, rng));
      std::size_t reported = 0;
      for (const Dataset& s : subsets) {
        std::optional<double> p;
        if (s.rows() >= test.MinSampleSize()) p = test.PValue(s);
        if (!p.has_value()) p = UniformDouble(rng);
        const bool decision = *p < e.alpha0;
        const bool truthful = UniformDouble(rng) < e.pb_keep_probability;
        if (decision == truthful) ++reported;
      }
      out.reject = reported >= (e.m + 1) / 2;
      return out;
    }
  }
  return absl::InternalError("unknown engine");
}

absl::StatusOr<std::vector<Outcome>> RunAll(const SimPlan& plan) {
  TOT_RETURN_IF_ERROR(plan.Validate());
  std::vector<Outcome> outcomes(plan.replicates);
  std::mutex mu;
  absl::Status first_error;
  ParallelFor(
      plan.replicates,
      [&](std::size_t r) {
        auto o = RunReplicate(plan, r);
        if (o.ok()) {
          outcomes[r] = *o;
          return;
        }
        std::lock_guard<std::mutex> lock(mu);
        if (first_error.ok()) first_error = o.status();
      },
      plan.threads, 64);
  if (!first_error.ok()) return first_error;
  return outcomes;
}

}  // namespace

absl::Status GeneratorSpec::Validate() const {
  if (n < 1) return absl::InvalidArgumentError("generator needs n >= 1");
  switch (family) {
    case GeneratorFamily::kNormal:
      if (!std::holds_alternative<StandardizedMean>(effect)) {
        return absl::InvalidArgumentError("normal generator needs a mean effect");
      }
      return absl::OkStatus();
    case GeneratorFamily::kAnova: {
      const auto* a = std::get_if<AnovaEffect>(&effect);
      if (a == nullptr) {
        return absl::InvalidArgumentError("ANOVA generator needs an ANOVA effect");
      }
      if (a->groups < 2 || !(a->eta >= 0.0)) {
        return absl::InvalidArgumentError(
            "ANOVA generator needs groups >= 2 and eta >= 0");
      }
      return absl::OkStatus();
    }
    case GeneratorFamily::kMvn: {
      const auto* v = std::get_if<MeanVector>(&effect);
      if (v == nullptr || v->mu.empty()) {
        return absl::InvalidArgumentError(
            "multivariate generator needs a nonempty mean vector");
      }
      return absl::OkStatus();
    }
    case GeneratorFamily::kPValueMixture:
      if (!(theta >= 0.0 && theta <= 1.0) || !InOpenUnit(mixture_alpha0)) {
        return absl::InvalidArgumentError(
            "mixture generator needs theta in [0, 1] and alpha0 in (0, 1)");
      }
      return absl::OkStatus();
  }
  return absl::InvalidArgumentError("unknown generator family");
}

bool GeneratorSpec::IsNull() const {
  if (family == GeneratorFamily::kPValueMixture) return theta <= mixture_alpha0;
  return IsNullEffect(effect);
}

absl::StatusOr<GeneratorFamily> ParseGeneratorFamily(std::string_view name) {
  if (name == "normal") return GeneratorFamily::kNormal;
  if (name == "anova") return GeneratorFamily::kAnova;
  if (name == "mvn") return GeneratorFamily::kMvn;
  if (name == "pvalue-mixture") return GeneratorFamily::kPValueMixture;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown generator '", std::string(name),
      "' (want normal, anova, mvn, pvalue-mixture)"));
}

std::vector<double> AnovaGroupMeans(double eta, int groups) {
  std::vector<double> means(groups);
  const double g = static_cast<double>(groups);
  const double sd = std::sqrt((g * g - 1.0) / 12.0);
  for (int k = 0; k < groups; ++k) {
    means[k] = std::sqrt(eta) * (k - 0.5 * (g - 1.0)) / sd;
  }
  return means;
}

absl::StatusOr<Dataset> GenerateDataset(const GeneratorSpec& spec, Rng& rng) {
  TOT_RETURN_IF_ERROR(spec.Validate());
  const std::size_t n = spec.n;
  switch (spec.family) {
    case GeneratorFamily::kNormal: {
      const double mu = std::get<StandardizedMean>(spec.effect).value;
      std::vector<double> v(n);
      for (double& x : v) x = mu + StandardNormal(rng);
      return Dataset::Create(std::move(v), 1);
    }
    case GeneratorFamily::kAnova: {
      const auto& a = std::get<AnovaEffect>(spec.effect);
      const std::vector<double> means = AnovaGroupMeans(a.eta, a.groups);
      std::vector<double> v(n);
      std::vector<int> groups(n);
      for (std::size_t i = 0; i < n; ++i) {
        groups[i] = static_cast<int>(i % a.groups);
        v[i] = means[groups[i]] + StandardNormal(rng);
      }
      std::vector<std::string> names;
      for (int k = 0; k < a.groups; ++k) names.push_back(absl::StrCat("g", k + 1));
      return Dataset::Create(std::move(v), 1, std::move(groups), std::move(names));
    }
    case GeneratorFamily::kMvn: {
      const auto& mu = std::get<MeanVector>(spec.effect).mu;
      const std::size_t d = mu.size();
      std::vector<double> v(n * d);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) v[i * d + j] = mu[j] + StandardNormal(rng);
      }
      return Dataset::Create(std::move(v), d);
    }
    case GeneratorFamily::kPValueMixture: {
      const double a0 = spec.mixture_alpha0;
      std::vector<double> v(n);
      for (double& x : v) {
        const bool reject = UniformDouble(rng) < spec.theta;
        const double u = UniformDouble(rng);
        x = reject ? a0 * u : a0 + (1.0 - a0) * u;
      }
      return Dataset::Create(std::move(v), 1);
    }
  }
  return absl::InvalidArgumentError("unknown generator family");
}

absl::Status PValuePassThroughTest::CheckCompatible(const Dataset& data) const {
  if (data.cols() != 1) {
    return absl::InvalidArgumentError("p-value pass-through expects one column");
  }
  return absl::OkStatus();
}

std::optional<double> PValuePassThroughTest::PValue(const Dataset& subset) const {
  if (subset.rows() == 0) return std::nullopt;
  return std::clamp(subset.value(0), 0.0, 1.0);
}

absl::StatusOr<double> PValuePassThroughTest::Power(std::size_t,
                                                    const EffectSpec&,
                                                    double) const {
  return absl::UnimplementedError("the pass-through test has no power model");
}

absl::StatusOr<EngineKind> ParseEngineKind(std::string_view name) {
  if (name == "tot") return EngineKind::kTot;
  if (name == "public") return EngineKind::kPublic;
  if (name == "pb") return EngineKind::kPb;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown engine '", std::string(name), "' (want tot, public, pb)"));
}

absl::Status SimPlan::Validate() const {
  if (replicates < 1) {
    return absl::InvalidArgumentError("replicates must be at least 1");
  }
  TOT_RETURN_IF_ERROR(generator.Validate());
  if (engine.test == nullptr) {
    return absl::InvalidArgumentError("engine has no public test");
  }
  if (!InOpenUnit(engine.alpha)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1)");
  }
  if (engine.kind != EngineKind::kPublic) {
    if (engine.m < 1 || engine.m > generator.n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "need 1 <= m <= n, got m=", engine.m, " n=", generator.n));
    }
    if (!InOpenUnit(engine.alpha0)) {
      return absl::InvalidArgumentError("alpha0 must lie in (0, 1)");
    }
  }
  if (engine.kind == EngineKind::kTot &&
      (!(engine.epsilon > 0.0) || !std::isfinite(engine.epsilon))) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  if (engine.kind == EngineKind::kPb) {
    if (engine.m % 2 == 0) {
      return absl::InvalidArgumentError("PB needs an odd number of subsets");
    }
    if (!(engine.pb_keep_probability >= 0.0 && engine.pb_keep_probability <= 1.0)) {
      return absl::InvalidArgumentError("PB keep probability must lie in [0, 1]");
    }
  }
  // Shape compatibility between generator and test, checked on one draw.
  Rng probe = MakeRng(seed, ~std::uint64_t{0});
  TOT_ASSIGN_OR_RETURN(Dataset sample, GenerateDataset(generator, probe));
  return engine.test->CheckCompatible(sample);
}

double BinomialStandardError(double estimate, std::size_t replicates) {
  if (replicates == 0) return 0.0;
  return std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(replicates));
}

absl::StatusOr<SimResult> EstimateRejectionRate(const SimPlan& plan) {
  TOT_ASSIGN_OR_RETURN(std::vector<Outcome> outcomes, RunAll(plan));
  SimResult result;
  for (const Outcome& o : outcomes) result.rejections += o.reject ? 1 : 0;
  result.replicates = plan.replicates;
  result.seed = plan.seed;
  result.estimate = static_cast<double>(result.rejections) /
                    static_cast<double>(plan.replicates);
  result.std_error = BinomialStandardError(result.estimate, plan.replicates);
  return result;
}

double KolmogorovTwoSidedCritical(double level) {
  // P(K > c) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 c^2), decreasing in c.
  auto tail = [](double c) {
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * c * c);
      s += (k % 2 == 1 ? term : -term);
      if (term < 1e-18) break;
    }
    return 2.0 * s;
  };
  double lo = 0.3;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double KolmogorovOneSidedCritical(double level) {
  return std::sqrt(std::log(1.0 / level) / 2.0);
}

absl::StatusOr<UniformityResult> EstimatePValueUniformity(
    const SimPlan& plan, UniformityCheck check) {
  if (plan.engine.kind == EngineKind::kPb) {
    return absl::InvalidArgumentError("the PB engine does not produce p-values");
  }
  TOT_RETURN_IF_ERROR(plan.generator.Validate());
  if (!plan.generator.IsNull()) {
    return absl::InvalidArgumentError(
        "uniformity is only defined under a null generator");
  }
  TOT_ASSIGN_OR_RETURN(std::vector<Outcome> outcomes, RunAll(plan));
  std::vector<double> p(outcomes.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = outcomes[i].p_value;
  std::sort(p.begin(), p.end());
  const double n = static_cast<double>(p.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - p[i];
    const double below = p[i] - static_cast<double>(i) / n;
    stat = std::max(stat, check == UniformityCheck::kTwoSided
                              ? std::max(above, below)
                              : above);
  }
  UniformityResult result;
  result.statistic = stat;
  const double c = check == UniformityCheck::kTwoSided
                       ? KolmogorovTwoSidedCritical(kUniformityLevel)
                       : KolmogorovOneSidedCritical(kUniformityLevel);
  result.threshold = c / std::sqrt(n);
  result.pass = stat <= result.threshold;
  result.replicates = plan.replicates;
  result.seed = plan.seed;
  return result;
}

}  // namespace tot
