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

#include "hmojpeg/jpeg_model.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "hmojpeg/error.h"

namespace hmojpeg {

namespace {

constexpr std::array<int, kDctBlockSize> kZigzagToNatural = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

constexpr std::array<int, kDctBlockSize> MakeNaturalToZigzag() {
  std::array<int, kDctBlockSize> out{};
  for (int i = 0; i < kDctBlockSize; ++i) out[kZigzagToNatural[i]] = i;
  return out;
}
constexpr std::array<int, kDctBlockSize> kNaturalToZigzag =
    MakeNaturalToZigzag();

// ITU-T T.81 Annex K.1, natural order.
constexpr int kAnnexKLuma[kDctBlockSize] = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
constexpr int kAnnexKChroma[kDctBlockSize] = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

QuantTable ScaleTable(const int* natural, int quality) {
  if (quality < 1 || quality > 100) {
    throw InvalidArgument("quality must be in [1, 100], got " +
                          std::to_string(quality));
  }
  // libjpeg's jpeg_quality_scaling.
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<int, kDctBlockSize> zz{};
  for (int i = 0; i < kDctBlockSize; ++i) {
    int v = (natural[kZigzagToNatural[i]] * scale + 50) / 100;
    zz[i] = std::clamp(v, 1, 255);
  }
  return QuantTable(zz);
}

}  // namespace

const char* ChannelName(Channel channel) {
  switch (channel) {
    case Channel::kY:
      return "Y";
    case Channel::kCb:
      return "Cb";
    case Channel::kCr:
      return "Cr";
  }
  return "?";
}

RgbImage::RgbImage(int width, int height)
    : RgbImage(width, height,
               std::vector<uint8_t>(3 * size_t(std::max(width, 0)) *
                                    size_t(std::max(height, 0)))) {}

RgbImage::RgbImage(int width, int height, std::vector<uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be positive");
  }
  if (samples_.size() != 3 * size_t(width) * size_t(height)) {
    throw InvalidArgument("sample count does not match 3 * width * height");
  }
}

QuantTable::QuantTable() { steps_.fill(1); }

QuantTable::QuantTable(const std::array<int, kDctBlockSize>& zigzag_steps)
    : steps_(zigzag_steps) {
  for (int v : steps_) {
    if (v < 1 || v > 255) {
      throw InvalidArgument("quantizer step out of [1, 255]: " +
                            std::to_string(v));
    }
  }
}

std::string QuantTable::ToString() const {
  std::ostringstream os;
  for (int i = 0; i < kDctBlockSize; ++i) {
    if (i) os << ' ';
    os << steps_[i];
  }
  return os.str();
}

QuantTable AnnexKLumaTable(int quality) {
  return ScaleTable(kAnnexKLuma, quality);
}
QuantTable AnnexKChromaTable(int quality) {
  return ScaleTable(kAnnexKChroma, quality);
}

bool IsLegalAcSymbol(uint8_t symbol) {
  const int size = symbol & 15;
  if (size == 0) return symbol == kEobSymbol || symbol == kZrlSymbol;
  return size <= kMaxAcSizeCategory;
}

RlsDistribution::RlsDistribution() {
  const double p = 1.0 / kNumLegalAcSymbols;
  for (int s = 0; s < 256; ++s) {
    const bool legal = IsLegalAcSymbol(static_cast<uint8_t>(s));
    prob_[s] = legal ? p : 0.0;
    bits_[s] = legal ? -std::log2(p) : std::numeric_limits<double>::infinity();
  }
}

RlsDistribution RlsDistribution::FromCounts(const SymbolCounts& counts,
                                            bool smooth) {
  RlsDistribution dist;
  dist.counts_ = counts;
  double total = 0.0;
  for (int s = 0; s < 256; ++s) {
    if (counts[s] != 0 && !IsLegalAcSymbol(static_cast<uint8_t>(s))) {
      throw InvalidArgument("count for illegal AC symbol " + std::to_string(s));
    }
    total += static_cast<double>(counts[s]);
  }
  if (smooth) total += kNumLegalAcSymbols;
  if (total <= 0.0) {
    throw InvalidArgument("cannot normalize an empty symbol histogram");
  }
  for (int s = 0; s < 256; ++s) {
    double c = static_cast<double>(counts[s]);
    if (smooth && IsLegalAcSymbol(static_cast<uint8_t>(s))) c += 1.0;
    dist.prob_[s] = c / total;
    dist.bits_[s] = c > 0.0 ? -std::log2(dist.prob_[s])
                            : std::numeric_limits<double>::infinity();
  }
  return dist;
}

uint64_t RlsDistribution::total_count() const {
  return std::accumulate(counts_.begin(), counts_.end(), uint64_t{0});
}

void HuffmanSpec::Validate() const {
  size_t n = 0;
  // Kraft sum scaled by 2^16.
  uint64_t kraft = 0;
  for (int len = 1; len <= 16; ++len) {
    n += bits[len];
    kraft += uint64_t{bits[len]} << (16 - len);
  }
  if (n == 0) throw InvalidArgument("Huffman table has no codes");
  if (n > 256) throw InvalidArgument("Huffman table has more than 256 codes");
  if (n != values.size()) {
    throw InvalidArgument("BITS total does not match HUFFVAL length");
  }
  if (kraft >= (uint64_t{1} << 16)) {
    throw InvalidArgument(
        "Huffman table is complete or oversubscribed; the all-ones code "
        "must stay reserved");
  }
}

std::vector<int> HuffmanSpec::CodeLengths() const {
  std::vector<int> lengths;
  lengths.reserve(values.size());
  for (int len = 1; len <= 16; ++len) {
    for (int k = 0; k < bits[len]; ++k) lengths.push_back(len);
  }
  return lengths;
}

int ZigzagIndex(int row, int col) {
  if (row < 0 || row > 7 || col < 0 || col > 7) {
    throw InvalidArgument("zigzag row/col out of range");
  }
  return kNaturalToZigzag[row * 8 + col];
}

std::pair<int, int> ZigzagToRowCol(int zigzag_pos) {
  if (zigzag_pos < 0 || zigzag_pos >= kDctBlockSize) {
    throw InvalidArgument("zigzag position out of range");
  }
  const int natural = kZigzagToNatural[zigzag_pos];
  return {natural / 8, natural % 8};
}

const std::array<int, kDctBlockSize>& ZigzagToNatural() {
  return kZigzagToNatural;
}

int SizeCategory(int value) {
  const int mag = std::abs(value);
  if (mag >= (1 << kMaxDcSizeCategory)) {
    throw InvalidArgument("amplitude " + std::to_string(value) +
                          " exceeds size category 11");
  }
  int s = 0;
  for (int m = mag; m != 0; m >>= 1) ++s;
  return s;
}

uint32_t AmplitudeBits(int value, int size) {
  if (value >= 0) return static_cast<uint32_t>(value);
  return static_cast<uint32_t>(value + (1 << size) - 1);
}

int DecodeAmplitude(uint32_t bits, int size) {
  if (size == 0) return 0;
  const int v = static_cast<int>(bits);
  if (v < (1 << (size - 1))) return v - (1 << size) + 1;
  return v;
}

}  // namespace hmojpeg
