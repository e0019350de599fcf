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

#include "src/public_tests.h"

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "src/distributions.h"

namespace tot {
namespace {

absl::Status CheckAlpha0(double alpha0) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha0 must lie in (0, 1), got ", alpha0));
  }
  return absl::OkStatus();
}

absl::Status EffectMismatch(std::string_view test) {
  return absl::InvalidArgumentError(
      absl::StrCat("effect specification does not match the ", std::string(test), " test"));
}

absl::Status CheckUnivariate(const Dataset& data, std::string_view test) {
  if (data.cols() != 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "the ", std::string(test), " test expects one column, got ", data.cols()));
  }
  return absl::OkStatus();
}

double Mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

class ZTest final : public PublicTest {
 public:
  explicit ZTest(Alternative alternative) : alternative_(alternative) {}
  std::string_view name() const override { return "z"; }
  std::size_t MinSampleSize() const override { return 1; }
  absl::Status CheckCompatible(const Dataset& data) const override {
    return CheckUnivariate(data, "z");
  }
  std::optional<double> PValue(const Dataset& subset) const override {
    return ZTestPValue(subset.values(), alternative_);
  }
  absl::StatusOr<double> Power(std::size_t n, const EffectSpec& effect,
                               double alpha0) const override {
    if (auto s = CheckAlpha0(alpha0); !s.ok()) return s;
    const auto* e = std::get_if<StandardizedMean>(&effect);
    if (e == nullptr) return EffectMismatch("z");
    return ZTestPower(n, e->value, alpha0, alternative_);
  }

 private:
  Alternative alternative_;
};

class TTest final : public PublicTest {
 public:
  explicit TTest(Alternative alternative) : alternative_(alternative) {}
  std::string_view name() const override { return "t"; }
  std::size_t MinSampleSize() const override { return 2; }
  absl::Status CheckCompatible(const Dataset& data) const override {
    return CheckUnivariate(data, "t");
  }
  std::optional<double> PValue(const Dataset& subset) const override {
    return TTestPValue(subset.values(), alternative_);
  }
  absl::StatusOr<double> Power(std::size_t n, const EffectSpec& effect,
                               double alpha0) const override {
    if (auto s = CheckAlpha0(alpha0); !s.ok()) return s;
    const auto* e = std::get_if<StandardizedMean>(&effect);
    if (e == nullptr) return EffectMismatch("t");
    return TTestPower(n, e->value, alpha0, alternative_);
  }

 private:
  Alternative alternative_;
};

class AnovaTest final : public PublicTest {
 public:
  explicit AnovaTest(int groups) : groups_(groups) {}
  std::string_view name() const override { return "anova"; }
  std::size_t MinSampleSize() const override {
    return static_cast<std::size_t>(groups_) + 1;
  }
  absl::Status CheckCompatible(const Dataset& data) const override {
    if (auto s = CheckUnivariate(data, "ANOVA"); !s.ok()) return s;
    if (!data.has_groups()) {
      return absl::InvalidArgumentError("ANOVA needs group labels");
    }
    if (data.num_groups() != static_cast<std::size_t>(groups_)) {
      return absl::InvalidArgumentError(
          absl::StrCat("ANOVA configured for ", groups_, " groups, data has ",
                       data.num_groups()));
    }
    return absl::OkStatus();
  }
  std::optional<double> PValue(const Dataset& subset) const override {
    return AnovaPValue(subset, groups_);
  }
  absl::StatusOr<double> Power(std::size_t n, const EffectSpec& effect,
                               double alpha0) const override {
    if (auto s = CheckAlpha0(alpha0); !s.ok()) return s;
    const auto* e = std::get_if<AnovaEffect>(&effect);
    if (e == nullptr || e->groups != groups_) return EffectMismatch("ANOVA");
    if (!(e->eta >= 0.0)) {
      return absl::InvalidArgumentError("ANOVA effect eta must be >= 0");
    }
    return AnovaPower(n, e->eta, groups_, alpha0);
  }

 private:
  int groups_;
};

class MvnMeanTest final : public PublicTest {
 public:
  std::string_view name() const override { return "mvn-mean"; }
  std::size_t MinSampleSize() const override { return 1; }
  absl::Status CheckCompatible(const Dataset& data) const override {
    if (data.cols() < 1) return absl::InvalidArgumentError("no columns");
    return absl::OkStatus();
  }
  std::optional<double> PValue(const Dataset& subset) const override {
    return MvnMeanPValue(subset);
  }
  absl::StatusOr<double> Power(std::size_t n, const EffectSpec& effect,
                               double alpha0) const override {
    if (auto s = CheckAlpha0(alpha0); !s.ok()) return s;
    const auto* e = std::get_if<MeanVector>(&effect);
    if (e == nullptr || e->mu.empty()) return EffectMismatch("mvn-mean");
    return MvnMeanPower(n, e->mu, alpha0);
  }
};

}  // namespace

absl::StatusOr<TestFamily> ParseTestFamily(std::string_view name) {
  if (name == "z") return TestFamily::kZ;
  if (name == "t") return TestFamily::kT;
  if (name == "anova") return TestFamily::kAnova;
  if (name == "mvn-mean" || name == "mvn") return TestFamily::kMvnMean;
  return absl::InvalidArgumentError(absl::StrCat("unknown test family '", std::string(name),
                                                 "' (want z, t, anova, mvn-mean)"));
}

std::string_view TestFamilyName(TestFamily family) {
  switch (family) {
    case TestFamily::kZ:
      return "z";
    case TestFamily::kT:
      return "t";
    case TestFamily::kAnova:
      return "anova";
    case TestFamily::kMvnMean:
      return "mvn-mean";
  }
  return "?";
}

absl::StatusOr<Alternative> ParseAlternative(std::string_view name) {
  if (name == "greater") return Alternative::kGreater;
  if (name == "two-sided") return Alternative::kTwoSided;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown alternative '", std::string(name), "' (want greater, two-sided)"));
}

std::string_view AlternativeName(Alternative alternative) {
  return alternative == Alternative::kGreater ? "greater" : "two-sided";
}

absl::StatusOr<std::unique_ptr<PublicTest>> MakePublicTest(
    TestFamily family, Alternative alternative, int groups) {
  switch (family) {
    case TestFamily::kZ:
      return std::make_unique<ZTest>(alternative);
    case TestFamily::kT:
      return std::make_unique<TTest>(alternative);
    case TestFamily::kAnova:
      if (groups < 2) {
        return absl::InvalidArgumentError("ANOVA needs at least 2 groups");
      }
      return std::make_unique<AnovaTest>(groups);
    case TestFamily::kMvnMean:
      return std::make_unique<MvnMeanTest>();
  }
  return absl::InvalidArgumentError("unknown test family");
}

std::optional<double> ZTestPValue(std::span<const double> values,
                                  Alternative alternative) {
  if (values.empty()) return std::nullopt;
  const double stat =
      std::sqrt(static_cast<double>(values.size())) * Mean(values);
  if (alternative == Alternative::kGreater) return NormalSf(stat);
  return ClampProbability(2.0 * NormalSf(std::abs(stat)));
}

double ZTestPower(std::size_t n, double effect, double alpha0,
                  Alternative alternative) {
  if (n < 1) return alpha0;
  const double shift = std::sqrt(static_cast<double>(n)) * effect;
  if (alternative == Alternative::kGreater) {
    return NormalSf(-NormalQuantile(alpha0) - shift);
  }
  const double crit = -NormalQuantile(0.5 * alpha0);
  return ClampProbability(NormalSf(crit - shift) + NormalCdf(-crit - shift));
}

std::optional<double> TTestPValue(std::span<const double> values,
                                  Alternative alternative) {
  const std::size_t n = values.size();
  if (n < 2) return std::nullopt;
  const double mean = Mean(values);
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  if (!(ss > 0.0)) return std::nullopt;
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double stat = std::sqrt(static_cast<double>(n)) * mean / sd;
  const double df = static_cast<double>(n - 1);
  if (alternative == Alternative::kGreater) return StudentTSf(stat, df);
  return ClampProbability(2.0 * StudentTSf(std::abs(stat), df));
}

double TTestPower(std::size_t n, double effect, double alpha0,
                  Alternative alternative) {
  if (n < 2) return alpha0;
  const double df = static_cast<double>(n - 1);
  const double delta = std::sqrt(static_cast<double>(n)) * effect;
  if (alternative == Alternative::kGreater) {
    const double crit = StudentTUpperQuantile(alpha0, df);
    return ClampProbability(NoncentralTCdf(-crit, df, -delta));
  }
  const double crit = StudentTUpperQuantile(0.5 * alpha0, df);
  return ClampProbability(NoncentralTCdf(-crit, df, -delta) +
                          NoncentralTCdf(-crit, df, delta));
}

std::optional<double> AnovaPValue(const Dataset& subset, int groups) {
  const std::size_t n = subset.rows();
  if (groups < 2 || n < static_cast<std::size_t>(groups) + 1 ||
      !subset.has_groups()) {
    return std::nullopt;
  }
  std::vector<double> sums(groups, 0.0);
  std::vector<std::size_t> counts(groups, 0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int g = subset.group(i);
    if (g < 0 || g >= groups) return std::nullopt;
    sums[g] += subset.value(i);
    ++counts[g];
    grand += subset.value(i);
  }
  for (std::size_t c : counts) {
    if (c == 0) return std::nullopt;
  }
  grand /= static_cast<double>(n);
  std::vector<double> means(groups);
  double between = 0.0;
  for (int g = 0; g < groups; ++g) {
    means[g] = sums[g] / static_cast<double>(counts[g]);
    between += static_cast<double>(counts[g]) * (means[g] - grand) * (means[g] - grand);
  }
  double within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = subset.value(i) - means[subset.group(i)];
    within += r * r;
  }
  if (!(within > 0.0)) return std::nullopt;
  const double df1 = static_cast<double>(groups - 1);
  const double df2 = static_cast<double>(n) - groups;
  const double f = (between / df1) / (within / df2);
  return FisherFSf(f, df1, df2);
}

double AnovaPower(std::size_t n, double eta, int groups, double alpha0) {
  if (n < static_cast<std::size_t>(groups) + 1) return alpha0;
  const double df1 = static_cast<double>(groups - 1);
  const double df2 = static_cast<double>(n) - groups;
  const double crit = FisherFUpperQuantile(alpha0, df1, df2);
  const auto params = NoncentralParams::Create(
      NoncentralFamily::kF, df1, df2, static_cast<double>(n) * eta);
  return NoncentralSf(crit, *params);
}

std::optional<double> MvnMeanPValue(const Dataset& subset) {
  const std::size_t n = subset.rows();
  const std::size_t d = subset.cols();
  if (n == 0 || d == 0) return std::nullopt;
  std::vector<double> sums(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = subset.row(i);
    for (std::size_t j = 0; j < d; ++j) sums[j] += row[j];
  }
  double stat = 0.0;
  for (double s : sums) {
    const double mean = s / static_cast<double>(n);
    stat += mean * mean;
  }
  stat *= static_cast<double>(n);
  return ChiSquareSf(stat, static_cast<double>(d));
}

double MvnMeanPower(std::size_t n, std::span<const double> mu, double alpha0) {
  if (n < 1) return alpha0;
  double norm2 = 0.0;
  for (double v : mu) norm2 += v * v;
  const double d = static_cast<double>(mu.size());
  const double crit = ChiSquareUpperQuantile(alpha0, d);
  const auto params = NoncentralParams::Create(NoncentralFamily::kChiSquare, d,
                                               0.0, static_cast<double>(n) * norm2);
  return NoncentralSf(crit, *params);
}

}  // namespace tot
