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


#include "hmojpeg/hmosdq.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hmojpeg/error.h"
#include "hmojpeg/hmoe.h"
#include "hmojpeg/metrics.h"

namespace hmojpeg {

int CompressResult::iterations() const {
  return static_cast<int>(std::max(luma_trace.iterations.size(),
                                   chroma_trace.iterations.size()));
}

double IdealDcBits(const SymbolCounts& dc_sizes) {
  uint64_t total = 0;
  for (uint64_t c : dc_sizes) total += c;
  double bits = 0.0;
  for (int s = 0; s < 256; ++s) {
    if (!dc_sizes[s]) continue;
    const double c = double(dc_sizes[s]);
    bits += c * (-std::log2(c / double(total)) + s);
  }
  return bits;
}

CompressResult CompressHmosdq(const RgbImage& image,
                              const SensitivityTable& sensitivity,
                              const CompressOptions& options) {
  const OptimizerConfig& cfg = options.optimizer;
  cfg.Validate();
  if (image.empty()) throw InvalidArgument("empty image");

  CompressResult out;
  out.sensitivity = sensitivity;
  const int m = std::min(image.width(), image.height());
  if (cfg.lambda > 0.0 && options.apply_asm && m != sensitivity.resolution) {
    if (m < sensitivity.resolution) {
      throw InvalidArgument(
          "image short side " + std::to_string(m) +
          " is below the sensitivity resolution " +
          std::to_string(sensitivity.resolution) +
          "; disable remapping to use the table as is");
    }
    out.sensitivity =
        MapSensitivity(sensitivity, BuildAsmJacobian(m, sensitivity.resolution));
    out.asm_applied = true;
  }
  const HmoeWeights weights = BuildWeights(out.sensitivity, cfg.lambda);

  const TransformedImage t = ForwardTransform(image, options.subsampling);
  const OptimizationResult luma =
      OptimizeLuma(t.planes[0], AnnexKLumaTable(cfg.quality),
                   weights.channel(Channel::kY), cfg);
  const OptimizationResult chroma = OptimizeChromaJoint(
      t.planes[1], t.planes[2], AnnexKChromaTable(cfg.quality),
      weights.channel(Channel::kCb), weights.channel(Channel::kCr), cfg);

  JpegCoefficients& coeffs = out.coefficients;
  coeffs.width = image.width();
  coeffs.height = image.height();
  coeffs.subsampling = options.subsampling;
  coeffs.luma_q = luma.q;
  coeffs.chroma_q = chroma.q;
  coeffs.blocks[0] = luma.indices[0];
  coeffs.blocks[1] = chroma.indices[0];
  coeffs.blocks[2] = chroma.indices[1];
  coeffs.Validate();

  out.jpeg = EncodeJfif(coeffs, OptimalHuffmanTables(coeffs, options.encode.restart_interval),
                        options.encode);
  out.luma_trace = luma.trace;
  out.chroma_trace = chroma.trace;
  out.ideal_ac_bits = luma.trace.iterations.back().ideal_bits +
                      chroma.trace.iterations.back().ideal_bits;
  const ScanHistograms h = CollectHistograms(coeffs, options.encode.restart_interval);
  out.ideal_dc_bits = IdealDcBits(h.dc[0]) + IdealDcBits(h.dc[1]);
  out.decoded = DecodeJfif(out.jpeg.bytes).image;
  out.psnr = Psnr(image, out.decoded);
  return out;
}

}  // namespace hmojpeg
