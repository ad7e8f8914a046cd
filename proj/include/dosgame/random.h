// Copyright 2026 The dosgame Authors.
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

#ifndef DOSGAME_RANDOM_H_
#define DOSGAME_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace dosgame {

// Every stochastic routine takes one of these explicitly; there is no global
// or wall-clock seeded state.
using Rng = std::mt19937_64;

// Uniform draw on [0, 1) built from the top 53 bits, so sequences are
// identical across standard library implementations.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn from a probability vector by inverse CDF.
inline int SampleIndex(std::span<const double> probs, Rng& rng) {
  if (probs.empty()) throw std::invalid_argument("empty distribution");
  const double u = Uniform01(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  // Rounding left u above the accumulated mass.
  return last_positive;
}

}  // namespace dosgame

#endif  // DOSGAME_RANDOM_H_
