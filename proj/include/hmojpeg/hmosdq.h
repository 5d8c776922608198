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
// End-to-end HMOSDQ compression of an RGB image into a baseline JPEG.

#ifndef HMOJPEG_HMOSDQ_H_
#define HMOJPEG_HMOSDQ_H_

#include "hmojpeg/jfif.h"
#include "hmojpeg/sdq.h"
#include "hmojpeg/sensitivity.h"

namespace hmojpeg {

struct CompressOptions {
  OptimizerConfig optimizer;
  Subsampling subsampling = Subsampling::k444;
  // Remap the sensitivity table when the image short side differs from the
  // table's resolution. When off the table is used as given.
  bool apply_asm = true;
  EncodeOptions encode;
};

struct CompressResult {
  EncodedJpeg jpeg;
  JpegCoefficients coefficients;
  IterationTrace luma_trace;
  IterationTrace chroma_trace;
  // Table the weights were built from, after any remapping.
  SensitivityTable sensitivity;
  bool asm_applied = false;
  // Model bits: AC symbols under the final distributions plus amplitudes,
  // and DC size categories at their empirical entropy plus amplitudes.
  double ideal_ac_bits = 0.0;
  double ideal_dc_bits = 0.0;
  RgbImage decoded;
  double psnr = 0.0;

  double ideal_bits() const { return ideal_ac_bits + ideal_dc_bits; }
  int iterations() const;
};

// Throws InvalidArgument when the image is smaller than the table's
// resolution and ASM is on (ASM only maps upward), or for a bad config.
// With lambda = 0 the sensitivity table does not influence the result and
// is not checked against the image size.
CompressResult CompressHmosdq(const RgbImage& image,
                              const SensitivityTable& sensitivity,
                              const CompressOptions& options);

// Empirical-entropy bits of a size-category histogram plus its amplitude
// bits.
double IdealDcBits(const SymbolCounts& dc_sizes);

}  // namespace hmojpeg

#endif  // HMOJPEG_HMOSDQ_H_
