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

#include "hmojpeg/metrics.h"

#include <algorithm>
#include <cmath>

#include "hmojpeg/error.h"

namespace hmojpeg {

double Psnr(const RgbImage& a, const RgbImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidArgument("PSNR of images with different dimensions");
  }
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  if (sa.empty()) throw InvalidArgument("PSNR of empty images");
  uint64_t sse = 0;
  for (size_t i = 0; i < sa.size(); ++i) {
    const int d = int(sa[i]) - int(sb[i]);
    sse += uint64_t(d * d);
  }
  if (sse == 0) return kPsnrCap;
  const double mse = double(sse) / double(sa.size());
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double BitsPerPixel(size_t file_bytes, int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("bad image dimensions");
  return 8.0 * double(file_bytes) / (double(width) * double(height));
}

}  // namespace hmojpeg
