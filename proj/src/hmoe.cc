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


#include "hmojpeg/hmoe.h"

#include <cmath>

#include "hmojpeg/error.h"

namespace hmojpeg {

HmoeWeights::HmoeWeights() {
  for (auto& c : channels) c.fill(1.0);
}

HmoeWeights BuildWeights(const SensitivityTable& sensitivity, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw InvalidArgument("lambda must be a finite nonnegative number");
  }
  sensitivity.Validate();
  HmoeWeights w;
  w.lambda = lambda;
  for (int c = 0; c < kNumChannels; ++c) {
    for (int i = 0; i < kDctBlockSize; ++i) {
      const double v = 1.0 + lambda * sensitivity.channels[c][i];
      if (!std::isfinite(v)) {
        throw InvalidArgument("HMOE weight overflows for lambda " +
                              std::to_string(lambda));
      }
      w.channels[c][i] = v;
    }
  }
  return w;
}

double HmoeBlock(const DctBlock& x, const IndexBlock& indices,
                 const QuantTable& q, const WeightVector& w) {
  double sum = 0.0;
  for (int i = 0; i < kDctBlockSize; ++i) {
    sum += HmoeTerm(x[i], indices[i], q[i], w[i]);
  }
  return sum;
}

}  // namespace hmojpeg
