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

#ifndef HMOJPEG_DCT_H_
#define HMOJPEG_DCT_H_

#include <array>
#include <span>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

using SpatialBlock = std::array<double, kDctBlockSize>;  // row major

// Orthonormal 8x8 DCT-II of row-major samples; output in zigzag order.
// Identical to the JPEG FDCT scaling, so DC = 8 * mean.
DctBlock FdctBlock(const SpatialBlock& spatial);
// Inverse of FdctBlock.
SpatialBlock IdctBlock(const DctBlock& coeffs);

// Level-shifts by -128 and transforms every 8x8 block of |plane|, whose
// dimensions must be multiples of 8.
DctPlane ForwardDct(const Plane& plane, Channel channel);
// Inverse of ForwardDct, including the +128 shift.
Plane InverseDct(const DctPlane& plane);

// Rounds half away from zero.
int RoundHalfAway(double v);

// index_i = round(coeff_i / q_i). Throws InvalidArgument if an AC index
// needs a size category above 10 or the DC index above 11.
IndexBlock HardQuantize(const DctBlock& block, const QuantTable& q);
DctBlock Dequantize(const IndexBlock& indices, const QuantTable& q);

}  // namespace hmojpeg

#endif  // HMOJPEG_DCT_H_
