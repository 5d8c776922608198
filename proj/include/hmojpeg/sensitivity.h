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
// Per-frequency classifier sensitivity tables and their remapping across
// image resolutions.
//
// A table holds, for each of Y, Cb and Cr, the mean over sample images of
// the summed squared loss gradient with respect to each DCT coefficient
// (zigzag order). Tables are estimated offline at one resolution; images at
// a larger resolution are served by pushing the table through the squared
// Jacobian of a fixed linear block pipeline (see BuildAsmJacobian).

#ifndef HMOJPEG_SENSITIVITY_H_
#define HMOJPEG_SENSITIVITY_H_

#include <array>
#include <map>
#include <string>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

using FrequencyVector = std::array<double, kDctBlockSize>;

struct SensitivityTable {
  std::string model;
  long long n_samples = 0;
  // Short side, in pixels, of the images the table describes.
  int resolution = 0;
  std::array<FrequencyVector, kNumChannels> channels{};
  // Unrecognized top-level keys as serialized JSON text, written back on
  // save.
  std::map<std::string, std::string> extra;

  const FrequencyVector& channel(Channel c) const {
    return channels[static_cast<int>(c)];
  }
  static SensitivityTable Zero(int resolution);

  // Throws SchemaError for negative or non-finite entries.
  void Validate() const;

  friend bool operator==(const SensitivityTable&,
                         const SensitivityTable&) = default;
};

// Interchange format (JSON):
//   {"model": str, "n_samples": int, "resolution": int,
//    "channels": {"Y": [64 numbers], "Cb": [...], "Cr": [...]}}
// Values are zigzag ordered. Doubles are written in shortest round-trip
// form, so save/load is bit-exact.
SensitivityTable ParseSensitivity(const std::string& text);
std::string SerializeSensitivity(const SensitivityTable& table);
// Throws IoError when the file cannot be read/written, SchemaError when its
// content is invalid.
SensitivityTable LoadSensitivity(const std::string& path);
void SaveSensitivity(const SensitivityTable& table, const std::string& path);

// Block side K in the original image that one 8x8 block of the
// classifier-resolution image covers: round-half-to-even(8 m / n).
int AsmTargetBlockSize(int orig_short_side, int input_short_side);

// The linear block pipeline: 8x8 IDCT, zero center-pad to K x K, bilinear
// resize (align_corners = false, no antialiasing) back to 8x8, 8x8 FDCT.
// Zigzag in, zigzag out.
FrequencyVector AsmPipeline(const FrequencyVector& coeffs, int target_block);

struct AsmJacobian {
  int orig_short_side = 0;
  int input_short_side = 0;
  int target_block = 8;
  // jacobian[i][k] = d out_i / d in_k, zigzag indices.
  std::array<FrequencyVector, kDctBlockSize> jacobian{};
};

// Throws InvalidArgument unless orig_short_side >= input_short_side >= 8.
AsmJacobian BuildAsmJacobian(int orig_short_side, int input_short_side);

// out_i = sum_k J[i][k]^2 * in_k per channel; resolution becomes the
// Jacobian's orig_short_side.
SensitivityTable MapSensitivity(const SensitivityTable& table,
                                const AsmJacobian& jacobian);

}  // namespace hmojpeg

#endif  // HMOJPEG_SENSITIVITY_H_
