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
// Slow, direct reference computations the library is checked against.

#ifndef HMOJPEG_TESTS_ORACLES_H_
#define HMOJPEG_TESTS_ORACLES_H_

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hmojpeg/jfif.h"
#include "hmojpeg/jpeg_model.h"

namespace hmojpeg::testing {

// Zigzag index -> row-major position, written out by hand.
extern const int kZigzagNatural[64];

// Orthonormal 2-D DCT-II straight from the cosine sum; row-major in,
// zigzag out.
std::array<double, 64> DirectDct(const std::array<double, 64>& spatial);
std::array<double, 64> DirectIdct(const std::array<double, 64>& zigzag);

// Minimum trellis cost over every assignment of positions 1..n-1 to
// {0} U candidates(k), scored transition by transition.
struct BruteForceResult {
  double cost = 0.0;
  std::vector<int> indices;
  long long paths = 0;
};
BruteForceResult BruteForceTrellis(std::span<const double> x, std::span<const int> q,
                                   std::span<const double> w, const RlsDistribution& dist,
                                   double beta, int radius);

// argmin over q in [1, 255] of sum_j w_j (x_j - I_j q)^2; ties to larger q.
int ScanBestStep(std::span<const double> x, std::span<const int> indices,
                 std::span<const double> w);

// Random index block whose AC entries fit size category 10 and whose DC
// fits 11, mostly small and sparse like real data.
IndexBlock RandomIndexBlock(std::mt19937_64& rng);

// Random image content with tables whose steps are all |step|; DC indices
// stay within +-1023 so every difference fits size category 11.
JpegCoefficients RandomCoefficients(std::mt19937_64& rng, int width, int height,
                                    Subsampling subsampling);

// Number of 0xFF 0x00 pairs between SOS and EOI.
int CountStuffedBytes(std::span<const uint8_t> jpeg);

std::string CorpusDir();
std::vector<std::string> CorpusImages();
std::string SampleSensitivityPath();

}  // namespace hmojpeg::testing

#endif  // HMOJPEG_TESTS_ORACLES_H_
