// Copyright 2026 The hmojpeg Authors
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
// Human-and-machine oriented error: squared DCT quantization error with a
// per-frequency weight 1 + lambda * S_i.

#ifndef HMOJPEG_HMOE_H_
#define HMOJPEG_HMOE_H_

#include <array>

#include "hmojpeg/jpeg_model.h"
#include "hmojpeg/sensitivity.h"

namespace hmojpeg {

using WeightVector = std::array<double, kDctBlockSize>;

struct HmoeWeights {
  double lambda = 0.0;
  std::array<WeightVector, kNumChannels> channels;

  HmoeWeights();  // lambda 0, all ones
  const WeightVector& channel(Channel c) const {
    return channels[static_cast<int>(c)];
  }
};

// Throws InvalidArgument for negative or non-finite lambda, or when a weight
// overflows to infinity.
HmoeWeights BuildWeights(const SensitivityTable& sensitivity, double lambda);

// sum_i w_i (x_i - I_i q_i)^2 over all 64 frequencies.
double HmoeBlock(const DctBlock& x, const IndexBlock& indices,
                 const QuantTable& q, const WeightVector& w);

// Per-frequency term w_i (x_i - I_i q_i)^2.
inline double HmoeTerm(double x, int index, int step, double w) {
  const double e = x - double(index) * double(step);
  return w * e * e;
}

}  // namespace hmojpeg

#endif  // HMOJPEG_HMOE_H_
