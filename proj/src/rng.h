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

#ifndef TOT_SRC_RNG_H_
#define TOT_SRC_RNG_H_

#include <cstdint>
#include <random>

namespace tot {

// All randomness in the library flows through this engine type. Engines are
// always passed explicitly; there is no global generator.
using Rng = std::mt19937_64;

// Mixes a base seed with a stream index (splitmix64 finalizer applied to both
// words). Used to give every replicate, subset and noise draw its own
// reproducible stream independent of evaluation order.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

inline Rng MakeRng(uint64_t seed, uint64_t stream) {
  return Rng(DeriveSeed(seed, stream));
}

// Uniform on [0, 1) with 53 random bits.
double UniformDouble(Rng& rng);

// Uniform on the open interval (0, 1).
double UniformOpen(Rng& rng);

double StandardNormal(Rng& rng);

}  // namespace tot

#endif  // TOT_SRC_RNG_H_
