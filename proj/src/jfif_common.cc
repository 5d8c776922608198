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

#include <cstdlib>

#include "hmojpeg/color.h"
#include "hmojpeg/dct.h"
#include "hmojpeg/error.h"
#include "hmojpeg/huffman.h"
#include "hmojpeg/jfif.h"
#include "hmojpeg/run_length.h"

namespace hmojpeg {

HuffmanTables HuffmanTables::Standard() {
  return {StandardDcLuma(), StandardAcLuma(), StandardDcChroma(),
          StandardAcChroma()};
}

ScanGeometry ScanGeometry::For(int width, int height, Subsampling subsampling) {
  ScanGeometry g;
  const int mcu = McuSize(subsampling);
  g.mcus_wide = (width + mcu - 1) / mcu;
  g.mcus_high = (height + mcu - 1) / mcu;
  const int luma_factor = subsampling == Subsampling::k420 ? 2 : 1;
  g.blocks_wide = {g.mcus_wide * luma_factor, g.mcus_wide, g.mcus_wide};
  g.blocks_high = {g.mcus_high * luma_factor, g.mcus_high, g.mcus_high};
  return g;
}

void ForEachScanBlock(const ScanGeometry& g, Subsampling subsampling,
                      const std::function<void(int, int, size_t)>& visit) {
  const int f = subsampling == Subsampling::k420 ? 2 : 1;
  int mcu = 0;
  for (int my = 0; my < g.mcus_high; ++my) {
    for (int mx = 0; mx < g.mcus_wide; ++mx, ++mcu) {
      for (int v = 0; v < f; ++v) {
        for (int h = 0; h < f; ++h) {
          visit(mcu, 0,
                size_t(my * f + v) * g.blocks_wide[0] + size_t(mx * f + h));
        }
      }
      visit(mcu, 1, size_t(my) * g.blocks_wide[1] + mx);
      visit(mcu, 2, size_t(my) * g.blocks_wide[2] + mx);
    }
  }
}

void JpegCoefficients::Validate() const {
  if (width < 1 || height < 1 || width > 65535 || height > 65535) {
    throw InvalidArgument("image dimensions out of JPEG range");
  }
  const ScanGeometry g = geometry();
  for (int c = 0; c < kNumChannels; ++c) {
    if (blocks[c].size() != size_t(g.blocks_wide[c]) * g.blocks_high[c]) {
      throw InvalidArgument(std::string("block count mismatch in component ") +
                            ChannelName(static_cast<Channel>(c)));
    }
    for (const IndexBlock& b : blocks[c]) {
      if (std::abs(b[0]) > 2047) {
        throw InvalidArgument("DC index out of range");
      }
      for (int k = 1; k < kDctBlockSize; ++k) {
        if (std::abs(b[k]) > kMaxAcIndex) {
          throw InvalidArgument("AC index out of range");
        }
      }
    }
  }
}

TransformedImage ForwardTransform(const RgbImage& image,
                                  Subsampling subsampling) {
  const YccPlanes ycc = RgbToYcc(image, subsampling);
  TransformedImage out;
  out.width = image.width();
  out.height = image.height();
  out.subsampling = subsampling;
  for (int c = 0; c < kNumChannels; ++c) {
    out.planes[c] = ForwardDct(ycc.planes[c], static_cast<Channel>(c));
  }
  return out;
}

JpegCoefficients HardQuantizeImage(const TransformedImage& image,
                                   const QuantTable& luma_q,
                                   const QuantTable& chroma_q) {
  JpegCoefficients out;
  out.width = image.width;
  out.height = image.height;
  out.subsampling = image.subsampling;
  out.luma_q = luma_q;
  out.chroma_q = chroma_q;
  for (int c = 0; c < kNumChannels; ++c) {
    const QuantTable& q = c == 0 ? luma_q : chroma_q;
    out.blocks[c].reserve(image.planes[c].blocks.size());
    for (const DctBlock& b : image.planes[c].blocks) {
      out.blocks[c].push_back(HardQuantize(b, q));
    }
  }
  return out;
}

RgbImage Reconstruct(const JpegCoefficients& coefficients) {
  const ScanGeometry g = coefficients.geometry();
  YccPlanes ycc;
  ycc.width = coefficients.width;
  ycc.height = coefficients.height;
  ycc.subsampling = coefficients.subsampling;
  for (int c = 0; c < kNumChannels; ++c) {
    const QuantTable& q = c == 0 ? coefficients.luma_q : coefficients.chroma_q;
    DctPlane plane;
    plane.channel = static_cast<Channel>(c);
    plane.blocks_wide = g.blocks_wide[c];
    plane.blocks_high = g.blocks_high[c];
    plane.blocks.reserve(coefficients.blocks[c].size());
    for (const IndexBlock& b : coefficients.blocks[c]) {
      plane.blocks.push_back(Dequantize(b, q));
    }
    ycc.planes[c] = InverseDct(plane);
  }
  return YccToRgb(ycc);
}

ScanHistograms CollectHistograms(const JpegCoefficients& coefficients,
                                 int restart_interval) {
  ScanHistograms h;
  std::array<int, kNumChannels> prev_dc{};
  int current_mcu = -1;
  ForEachScanBlock(coefficients.geometry(), coefficients.subsampling,
                   [&](int mcu, int comp, size_t idx) {
                     if (mcu != current_mcu) {
                       current_mcu = mcu;
                       if (restart_interval > 0 && mcu % restart_interval == 0) {
                         prev_dc = {};
                       }
                     }
                     const IndexBlock& b = coefficients.blocks[comp][idx];
                     const RunLengthSequence seq = BuildRunLengths(b, prev_dc[comp]);
                     prev_dc[comp] = b[0];
                     const int slot = comp == 0 ? 0 : 1;
                     ++h.dc[slot][seq.dc_size];
                     CountAcSymbols(seq.ac, h.ac[slot]);
                   });
  return h;
}

HuffmanTables OptimalHuffmanTables(const JpegCoefficients& coefficients,
                                   int restart_interval) {
  const ScanHistograms h = CollectHistograms(coefficients, restart_interval);
  return {BuildHuffman(h.dc[0]), BuildHuffman(h.ac[0]), BuildHuffman(h.dc[1]),
          BuildHuffman(h.ac[1])};
}

EncodedJpeg EncodeBaseline(const RgbImage& image, int quality,
                           Subsampling subsampling, bool optimize_huffman) {
  const JpegCoefficients coeffs =
      HardQuantizeImage(ForwardTransform(image, subsampling),
                        AnnexKLumaTable(quality), AnnexKChromaTable(quality));
  const HuffmanTables tables = optimize_huffman ? OptimalHuffmanTables(coeffs)
                                                : HuffmanTables::Standard();
  return EncodeJfif(coeffs, tables);
}

}  // namespace hmojpeg
