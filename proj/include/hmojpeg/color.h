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

#ifndef HMOJPEG_COLOR_H_
#define HMOJPEG_COLOR_H_

#include <array>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

// Full-range BT.601 (JFIF). Outputs are clamped to [0, 255] but not rounded.
std::array<double, 3> RgbToYccPixel(double r, double g, double b);
// Inverse of RgbToYccPixel, rounded half away from zero and clamped.
std::array<uint8_t, 3> YccToRgbPixel(double y, double cb, double cr);

// Side of the square MCU in luma samples: 8 for 4:4:4, 16 for 4:2:0.
int McuSize(Subsampling subsampling);

// Converts, pads by edge replication to whole MCUs, and for 4:2:0
// averages each 2x2 chroma neighbourhood.
YccPlanes RgbToYcc(const RgbImage& image, Subsampling subsampling);

// Inverse of RgbToYcc: upsamples chroma if needed (triangle filter),
// converts, and crops to the original size.
RgbImage YccToRgb(const YccPlanes& planes);

}  // namespace hmojpeg

#endif  // HMOJPEG_COLOR_H_
