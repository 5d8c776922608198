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

#ifndef HMOJPEG_METRICS_H_
#define HMOJPEG_METRICS_H_

#include <cstddef>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

// Reported in place of +infinity for identical images.
inline constexpr double kPsnrCap = 99.0;

// 10 log10(255^2 / MSE) over all RGB samples. Throws InvalidArgument on a
// dimension mismatch.
double Psnr(const RgbImage& a, const RgbImage& b);

// File bits over original pixel count.
double BitsPerPixel(size_t file_bytes, int width, int height);

}  // namespace hmojpeg

#endif  // HMOJPEG_METRICS_H_
