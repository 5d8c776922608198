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

#include "hmojpeg/dct.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "hmojpeg/error.h"

namespace hmojpeg {

namespace {

// kBasis[u][x] = c(u) cos((2x + 1) u pi / 16), c(0) = sqrt(1/8),
// c(u) = sqrt(2/8).
struct Basis {
  double m[8][8];
  Basis() {
    for (int u = 0; u < 8; ++u) {
      const double c = u == 0 ? std::sqrt(0.125) : 0.5;
      for (int x = 0; x < 8; ++x) {
        m[u][x] = c * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
  }
};

const Basis& GetBasis() {
  static const Basis basis;
  return basis;
}

}  // namespace

DctBlock FdctBlock(const SpatialBlock& spatial) {
  const auto& b = GetBasis().m;
  double tmp[8][8];
  // Rows.
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc += b[u][x] * spatial[y * 8 + x];
      tmp[y][u] = acc;
    }
  }
  // Columns.
  DctBlock out{};
  const auto& zz = ZigzagToNatural();
  double natural[kDctBlockSize];
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc += b[v][y] * tmp[y][u];
      natural[v * 8 + u] = acc;
    }
  }
  for (int k = 0; k < kDctBlockSize; ++k) out[k] = natural[zz[k]];
  return out;
}

SpatialBlock IdctBlock(const DctBlock& coeffs) {
  const auto& b = GetBasis().m;
  const auto& zz = ZigzagToNatural();
  double natural[kDctBlockSize];
  for (int k = 0; k < kDctBlockSize; ++k) natural[zz[k]] = coeffs[k];
  double tmp[8][8];
  // tmp[y][u] = sum_v b[v][y] F[v][u]
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc += b[v][y] * natural[v * 8 + u];
      tmp[y][u] = acc;
    }
  }
  SpatialBlock out{};
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc += b[u][x] * tmp[y][u];
      out[y * 8 + x] = acc;
    }
  }
  return out;
}

DctPlane ForwardDct(const Plane& plane, Channel channel) {
  if (plane.width % 8 != 0 || plane.height % 8 != 0) {
    throw InvalidArgument("plane dimensions must be multiples of 8");
  }
  DctPlane out;
  out.channel = channel;
  out.blocks_wide = plane.width / 8;
  out.blocks_high = plane.height / 8;
  out.blocks.reserve(size_t(out.blocks_wide) * out.blocks_high);
  for (int by = 0; by < out.blocks_high; ++by) {
    for (int bx = 0; bx < out.blocks_wide; ++bx) {
      SpatialBlock s;
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          s[y * 8 + x] = plane.at(bx * 8 + x, by * 8 + y) - 128.0;
        }
      }
      out.blocks.push_back(FdctBlock(s));
    }
  }
  return out;
}

Plane InverseDct(const DctPlane& plane) {
  Plane out(plane.blocks_wide * 8, plane.blocks_high * 8);
  for (int by = 0; by < plane.blocks_high; ++by) {
    for (int bx = 0; bx < plane.blocks_wide; ++bx) {
      const SpatialBlock s =
          IdctBlock(plane.blocks[size_t(by) * plane.blocks_wide + bx]);
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          out.at(bx * 8 + x, by * 8 + y) = s[y * 8 + x] + 128.0;
        }
      }
    }
  }
  return out;
}

int RoundHalfAway(double v) {
  return static_cast<int>(v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5));
}

IndexBlock HardQuantize(const DctBlock& block, const QuantTable& q) {
  IndexBlock out{};
  for (int k = 0; k < kDctBlockSize; ++k) {
    out[k] = RoundHalfAway(block[k] / q[k]);
    const int limit =
        k == 0 ? (1 << kMaxDcSizeCategory) - 1 : kMaxAcIndex;
    if (std::abs(out[k]) > limit) {
      throw InvalidArgument("quantization index " + std::to_string(out[k]) +
                            " at zigzag position " + std::to_string(k) +
                            " overflows its size category");
    }
  }
  return out;
}

DctBlock Dequantize(const IndexBlock& indices, const QuantTable& q) {
  DctBlock out{};
  for (int k = 0; k < kDctBlockSize; ++k) out[k] = double(indices[k]) * q[k];
  return out;
}

}  // namespace hmojpeg
