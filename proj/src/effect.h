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

#ifndef TOT_SRC_EFFECT_H_
#define TOT_SRC_EFFECT_H_

#include <string>
#include <variant>
#include <vector>

namespace tot {

// Standardized mean shift mu / sigma for the univariate z and t tests.
struct StandardizedMean {
  double value = 0.0;
};

// Var(mu_1..mu_g) / sigma^2 (population variance over groups) with g groups.
struct AnovaEffect {
  double eta = 0.0;
  int groups = 2;
};

// Mean vector of a d-dimensional N(mu, I) population.
struct MeanVector {
  std::vector<double> mu;
};

using EffectSpec = std::variant<StandardizedMean, AnovaEffect, MeanVector>;

// Multiplies the effect magnitude: the mean for z/t and multivariate
// effects, eta for ANOVA.
EffectSpec ScaleEffect(const EffectSpec& effect, double factor);

bool IsNullEffect(const EffectSpec& effect);

std::string DescribeEffect(const EffectSpec& effect);

}  // namespace tot

#endif  // TOT_SRC_EFFECT_H_
