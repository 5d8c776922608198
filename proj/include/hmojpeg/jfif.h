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
// Baseline sequential JFIF writing and reading for three-component YCbCr
// images at 4:4:4 or 4:2:0, one interleaved scan, Huffman coding.

#ifndef HMOJPEG_JFIF_H_
#define HMOJPEG_JFIF_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

struct HuffmanTables {
  HuffmanSpec dc_luma;
  HuffmanSpec ac_luma;
  HuffmanSpec dc_chroma;
  HuffmanSpec ac_chroma;

  static HuffmanTables Standard();
};

// Block grid of each component for an image of the given size.
struct ScanGeometry {
  int mcus_wide = 0;
  int mcus_high = 0;
  std::array<int, kNumChannels> blocks_wide{};
  std::array<int, kNumChannels> blocks_high{};

  static ScanGeometry For(int width, int height, Subsampling subsampling);
};

// Visits every block in interleaved scan order: (mcu index, component,
// raster block index within that component).
void ForEachScanBlock(const ScanGeometry& geometry, Subsampling subsampling,
                      const std::function<void(int, int, size_t)>& visit);

// Quantized image content, one raster-ordered IndexBlock list per component.
struct JpegCoefficients {
  int width = 0;
  int height = 0;
  Subsampling subsampling = Subsampling::k444;
  QuantTable luma_q;
  QuantTable chroma_q;
  std::array<std::vector<IndexBlock>, kNumChannels> blocks;

  ScanGeometry geometry() const {
    return ScanGeometry::For(width, height, subsampling);
  }
  // Throws InvalidArgument on inconsistent block counts or indices that
  // overflow their size categories.
  void Validate() const;
};

// Bit accounting of one encoded file. |entropy_coded_bits| is the scan
// segment as stored (stuffing and padding included), so total = header +
// entropy_coded. |symbol_bits| counts code word plus amplitude bits only.
struct RateReport {
  uint64_t total_bits = 0;
  uint64_t header_bits = 0;
  uint64_t entropy_coded_bits = 0;
  uint64_t symbol_bits = 0;
  uint64_t dc_symbol_bits = 0;
  uint64_t ac_symbol_bits = 0;
  double bpp = 0.0;
};

struct MarkerEntry {
  uint8_t code = 0;
  size_t offset = 0;
};

// Output byte buffer with a bit cursor for entropy-coded data.
class Bitstream {
 public:
  void WriteByte(uint8_t b) { bytes_.push_back(b); }
  void WriteWord(uint16_t w);
  void WriteMarker(uint8_t code);
  // Appends |count| (<= 24) low bits of |bits|, MSB first, stuffing a 0x00
  // after every 0xFF byte.
  void PutBits(uint32_t bits, int count);
  // Pads the partial byte with ones.
  void FlushBits();

  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t> TakeBytes() { return std::move(bytes_); }
  const std::vector<MarkerEntry>& markers() const { return markers_; }
  size_t size() const { return bytes_.size(); }

 private:
  std::vector<uint8_t> bytes_;
  std::vector<MarkerEntry> markers_;
  uint32_t acc_ = 0;
  int acc_bits_ = 0;
};

struct EncodeOptions {
  // MCUs per restart interval; 0 disables DRI/RSTn.
  int restart_interval = 0;
};

struct EncodedJpeg {
  std::vector<uint8_t> bytes;
  RateReport rate;
  std::vector<MarkerEntry> markers;
};

// Writes SOI, APP0, DQT x2, SOF0, DHT x4, [DRI], SOS, scan data, EOI.
EncodedJpeg EncodeJfif(const JpegCoefficients& coefficients,
                       const HuffmanTables& tables,
                       const EncodeOptions& options = {});

// DC size-category and AC run-length histograms in scan order;
// index 0 luma, 1 chroma.
struct ScanHistograms {
  std::array<SymbolCounts, 2> dc{};
  std::array<SymbolCounts, 2> ac{};
};
// DC prediction restarts with each restart interval; pass the interval the
// file will be written with.
ScanHistograms CollectHistograms(const JpegCoefficients& coefficients,
                                 int restart_interval = 0);
HuffmanTables OptimalHuffmanTables(const JpegCoefficients& coefficients,
                                   int restart_interval = 0);

struct DecodedJpeg {
  JpegCoefficients coefficients;
  HuffmanTables tables;
  int restart_interval = 0;
  RgbImage image;
};

// Throws DecodeError with a kind per failure class.
DecodedJpeg DecodeJfif(std::span<const uint8_t> bytes);

// Transform-domain view of an RGB image: padded, converted, and DCT'd.
struct TransformedImage {
  int width = 0;
  int height = 0;
  Subsampling subsampling = Subsampling::k444;
  std::array<DctPlane, kNumChannels> planes;
};

TransformedImage ForwardTransform(const RgbImage& image,
                                  Subsampling subsampling);
JpegCoefficients HardQuantizeImage(const TransformedImage& image,
                                   const QuantTable& luma_q,
                                   const QuantTable& chroma_q);
// Dequantize, IDCT, upsample, convert, crop.
RgbImage Reconstruct(const JpegCoefficients& coefficients);

// Plain JPEG: Annex K tables at |quality|, hard decisions, and either the
// Annex K Huffman tables or per-image optimal ones.
EncodedJpeg EncodeBaseline(const RgbImage& image, int quality,
                           Subsampling subsampling, bool optimize_huffman);

}  // namespace hmojpeg

#endif  // HMOJPEG_JFIF_H_
