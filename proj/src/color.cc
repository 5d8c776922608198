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

#include "hmojpeg/color.h"

#include <algorithm>
#include <cmath>

#include "hmojpeg/error.h"

namespace hmojpeg {

namespace {

double Clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

uint8_t ToByte(double v) {
  // Half away from zero; v is nonnegative after clamping.
  return static_cast<uint8_t>(std::floor(Clamp255(v) + 0.5));
}

int RoundUp(int v, int multiple) {
  return (v + multiple - 1) / multiple * multiple;
}

Plane Downsample2x2(const Plane& full) {
  Plane half(full.width / 2, full.height / 2);
  for (int y = 0; y < half.height; ++y) {
    for (int x = 0; x < half.width; ++x) {
      half.at(x, y) = 0.25 * (full.at(2 * x, 2 * y) + full.at(2 * x + 1, 2 * y) +
                              full.at(2 * x, 2 * y + 1) +
                              full.at(2 * x + 1, 2 * y + 1));
    }
  }
  return half;
}

// Triangle ("fancy") upsampling: each output sample is 9/16, 3/16, 3/16,
// 1/16 of its four nearest input samples, edges replicated.
Plane Upsample2x2(const Plane& half) {
  Plane full(half.width * 2, half.height * 2);
  auto in = [&](int x, int y) {
    x = std::clamp(x, 0, half.width - 1);
    y = std::clamp(y, 0, half.height - 1);
    return half.at(x, y);
  };
  for (int y = 0; y < full.height; ++y) {
    const int iy = y / 2;
    const int ny = (y % 2 == 0) ? iy - 1 : iy + 1;
    for (int x = 0; x < full.width; ++x) {
      const int ix = x / 2;
      const int nx = (x % 2 == 0) ? ix - 1 : ix + 1;
      full.at(x, y) = (9.0 * in(ix, iy) + 3.0 * in(nx, iy) + 3.0 * in(ix, ny) +
                       in(nx, ny)) /
                      16.0;
    }
  }
  return full;
}

}  // namespace

std::array<double, 3> RgbToYccPixel(double r, double g, double b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  const double cb = -0.168735892 * r - 0.331264108 * g + 0.5 * b + 128.0;
  const double cr = 0.5 * r - 0.418687589 * g - 0.081312411 * b + 128.0;
  return {Clamp255(y), Clamp255(cb), Clamp255(cr)};
}

std::array<uint8_t, 3> YccToRgbPixel(double y, double cb, double cr) {
  const double r = y + 1.402 * (cr - 128.0);
  const double g = y - 0.344136286 * (cb - 128.0) - 0.714136286 * (cr - 128.0);
  const double b = y + 1.772 * (cb - 128.0);
  return {ToByte(r), ToByte(g), ToByte(b)};
}

int McuSize(Subsampling subsampling) {
  return subsampling == Subsampling::k420 ? 16 : 8;
}

YccPlanes RgbToYcc(const RgbImage& image, Subsampling subsampling) {
  if (image.empty()) throw InvalidArgument("empty image");
  const int mcu = McuSize(subsampling);
  const int pw = RoundUp(image.width(), mcu);
  const int ph = RoundUp(image.height(), mcu);

  YccPlanes out;
  out.width = image.width();
  out.height = image.height();
  out.subsampling = subsampling;
  std::array<Plane, kNumChannels> full = {Plane(pw, ph), Plane(pw, ph),
                                          Plane(pw, ph)};
  for (int y = 0; y < ph; ++y) {
    const int sy = std::min(y, image.height() - 1);
    for (int x = 0; x < pw; ++x) {
      const int sx = std::min(x, image.width() - 1);
      const uint8_t* p = image.pixel(sx, sy);
      const auto ycc = RgbToYccPixel(p[0], p[1], p[2]);
      for (int c = 0; c < kNumChannels; ++c) full[c].at(x, y) = ycc[c];
    }
  }
  out.planes[0] = std::move(full[0]);
  if (subsampling == Subsampling::k420) {
    out.planes[1] = Downsample2x2(full[1]);
    out.planes[2] = Downsample2x2(full[2]);
  } else {
    out.planes[1] = std::move(full[1]);
    out.planes[2] = std::move(full[2]);
  }
  return out;
}

RgbImage YccToRgb(const YccPlanes& planes) {
  const Plane& luma = planes.planes[0];
  Plane cb = planes.planes[1];
  Plane cr = planes.planes[2];
  if (planes.subsampling == Subsampling::k420) {
    cb = Upsample2x2(cb);
    cr = Upsample2x2(cr);
  }
  if (cb.width < planes.width || cb.height < planes.height ||
      luma.width < planes.width || luma.height < planes.height) {
    throw InvalidArgument("planes smaller than the recorded image size");
  }
  RgbImage out(planes.width, planes.height);
  for (int y = 0; y < planes.height; ++y) {
    for (int x = 0; x < planes.width; ++x) {
      const auto rgb = YccToRgbPixel(luma.at(x, y), cb.at(x, y), cr.at(x, y));
      uint8_t* p = out.pixel(x, y);
      p[0] = rgb[0];
      p[1] = rgb[1];
      p[2] = rgb[2];
    }
  }
  return out;
}

}  // namespace hmojpeg
