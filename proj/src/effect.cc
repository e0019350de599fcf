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

#include "src/effect.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace tot {

EffectSpec ScaleEffect(const EffectSpec& effect, double factor) {
  struct Visitor {
    double factor;
    EffectSpec operator()(const StandardizedMean& e) const {
      return StandardizedMean{e.value * factor};
    }
    EffectSpec operator()(const AnovaEffect& e) const {
      return AnovaEffect{e.eta * factor, e.groups};
    }
    EffectSpec operator()(const MeanVector& e) const {
      MeanVector out = e;
      for (double& v : out.mu) v *= factor;
      return out;
    }
  };
  return std::visit(Visitor{factor}, effect);
}

bool IsNullEffect(const EffectSpec& effect) {
  struct Visitor {
    bool operator()(const StandardizedMean& e) const { return e.value == 0.0; }
    bool operator()(const AnovaEffect& e) const { return e.eta == 0.0; }
    bool operator()(const MeanVector& e) const {
      return std::all_of(e.mu.begin(), e.mu.end(),
                         [](double v) { return v == 0.0; });
    }
  };
  return std::visit(Visitor{}, effect);
}

std::string DescribeEffect(const EffectSpec& effect) {
  struct Visitor {
    std::string operator()(const StandardizedMean& e) const {
      return absl::StrCat("mean=", e.value);
    }
    std::string operator()(const AnovaEffect& e) const {
      return absl::StrCat("eta=", e.eta, ",groups=", e.groups);
    }
    std::string operator()(const MeanVector& e) const {
      return absl::StrCat("mu=[", absl::StrJoin(e.mu, ","), "]");
    }
  };
  return std::visit(Visitor{}, effect);
}

}  // namespace tot
