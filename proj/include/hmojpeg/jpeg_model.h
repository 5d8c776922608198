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
// Core data types and constants of baseline JPEG. Every coefficient-domain
// array in this library is stored in zigzag scan order unless its name says
// otherwise.

#ifndef HMOJPEG_JPEG_MODEL_H_
#define HMOJPEG_JPEG_MODEL_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hmojpeg {

inline constexpr int kDctBlockSize = 64;
inline constexpr int kMaxAcSizeCategory = 10;
inline constexpr int kMaxDcSizeCategory = 11;
inline constexpr int kMaxAcIndex = (1 << kMaxAcSizeCategory) - 1;

// Run-length symbols as they appear in HUFFVAL: high nibble run, low nibble
// size category.
inline constexpr uint8_t kEobSymbol = 0x00;
inline constexpr uint8_t kZrlSymbol = 0xF0;

enum class Channel : int { kY = 0, kCb = 1, kCr = 2 };
inline constexpr int kNumChannels = 3;
const char* ChannelName(Channel channel);

enum class Subsampling { k444, k420 };

// Interleaved 8-bit RGB, row major.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height);
  RgbImage(int width, int height, std::vector<uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return samples_.empty(); }
  const std::vector<uint8_t>& samples() const { return samples_; }
  std::vector<uint8_t>& mutable_samples() { return samples_; }

  const uint8_t* pixel(int x, int y) const {
    return &samples_[3 * (static_cast<size_t>(y) * width_ + x)];
  }
  uint8_t* pixel(int x, int y) {
    return &samples_[3 * (static_cast<size_t>(y) * width_ + x)];
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> samples_;
};

// Real-valued sample plane.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> samples;

  Plane() = default;
  Plane(int w, int h) : width(w), height(h), samples(size_t(w) * h, 0.0) {}
  double at(int x, int y) const { return samples[size_t(y) * width + x]; }
  double& at(int x, int y) { return samples[size_t(y) * width + x]; }
};

// Y, Cb, Cr planes padded by edge replication to whole MCUs. For 4:2:0 the
// chroma planes are already downsampled. |width| and |height| are the
// original image dimensions, kept for cropping on decode.
struct YccPlanes {
  int width = 0;
  int height = 0;
  Subsampling subsampling = Subsampling::k444;
  std::array<Plane, kNumChannels> planes;
};

using DctBlock = std::array<double, kDctBlockSize>;
using IndexBlock = std::array<int, kDctBlockSize>;

// DCT coefficients of one channel, blocks in raster order.
struct DctPlane {
  Channel channel = Channel::kY;
  int blocks_wide = 0;
  int blocks_high = 0;
  std::vector<DctBlock> blocks;

  size_t block_count() const { return blocks.size(); }
};

// 64 quantizer step sizes in zigzag order, each in [1, 255].
class QuantTable {
 public:
  QuantTable();  // all ones
  explicit QuantTable(const std::array<int, kDctBlockSize>& zigzag_steps);

  int operator[](int zigzag_pos) const { return steps_[zigzag_pos]; }
  const std::array<int, kDctBlockSize>& steps() const { return steps_; }
  std::string ToString() const;

  friend bool operator==(const QuantTable&, const QuantTable&) = default;

 private:
  std::array<int, kDctBlockSize> steps_;
};

// Annex K example tables scaled by a libjpeg quality factor in [1, 100].
QuantTable AnnexKLumaTable(int quality);
QuantTable AnnexKChromaTable(int quality);

// One entropy-coded AC event. EOB is {0, 0, 0}, ZRL is {15, 0, 0}.
struct RunLengthSymbol {
  uint8_t run = 0;
  uint8_t size = 0;
  int amplitude = 0;

  uint8_t symbol() const { return static_cast<uint8_t>((run << 4) | size); }
  bool is_eob() const { return run == 0 && size == 0; }
  bool is_zrl() const { return run == 15 && size == 0; }

  friend bool operator==(const RunLengthSymbol&,
                         const RunLengthSymbol&) = default;
};

// Entropy-coding view of one block: DPCM DC difference, then the AC
// run-length symbols.
struct RunLengthSequence {
  int dc_diff = 0;
  uint8_t dc_size = 0;
  std::vector<RunLengthSymbol> ac;

  friend bool operator==(const RunLengthSequence&,
                         const RunLengthSequence&) = default;
};

using SymbolCounts = std::array<uint64_t, 256>;

// True for EOB, ZRL and every (r, s) with r in [0, 15] and s in [1, 10].
bool IsLegalAcSymbol(uint8_t symbol);
inline constexpr int kNumLegalAcSymbols = 162;

// Probability mass over AC run-length symbols plus the counts it came from.
class RlsDistribution {
 public:
  RlsDistribution();  // uniform over the legal alphabet

  // Add-one smoothing over the legal AC alphabet when |smooth| is set;
  // otherwise plain relative frequencies (counts must not be all zero).
  static RlsDistribution FromCounts(const SymbolCounts& counts, bool smooth);

  double probability(uint8_t symbol) const { return prob_[symbol]; }
  // -log2 p, +inf for zero-mass symbols.
  double bits(uint8_t symbol) const { return bits_[symbol]; }
  const SymbolCounts& counts() const { return counts_; }
  uint64_t total_count() const;

 private:
  std::array<double, 256> prob_{};
  std::array<double, 256> bits_{};
  SymbolCounts counts_{};
};

// DHT table contents. bits[0] is unused; bits[l] is the number of codes of
// length l.
struct HuffmanSpec {
  std::array<uint8_t, 17> bits{};
  std::vector<uint8_t> values;

  // Throws InvalidArgument unless the table is JPEG-legal.
  void Validate() const;
  // Code length for each entry of |values|.
  std::vector<int> CodeLengths() const;

  friend bool operator==(const HuffmanSpec&, const HuffmanSpec&) = default;
};

// Zigzag scan position of natural-order (row, col).
int ZigzagIndex(int row, int col);
// Inverse of ZigzagIndex.
std::pair<int, int> ZigzagToRowCol(int zigzag_pos);
// zigzag position -> row * 8 + col
const std::array<int, kDctBlockSize>& ZigzagToNatural();

// JPEG magnitude category; 0 for 0. Throws for |value| >= 2048.
int SizeCategory(int value);
// The |size| low bits that carry |value| in the bitstream.
uint32_t AmplitudeBits(int value, int size);
int DecodeAmplitude(uint32_t bits, int size);

}  // namespace hmojpeg

#endif  // HMOJPEG_JPEG_MODEL_H_
