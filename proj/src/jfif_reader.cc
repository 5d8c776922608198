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

#include <optional>
#include <string>

#include "hmojpeg/error.h"
#include "hmojpeg/jfif.h"

namespace hmojpeg {

namespace {

[[noreturn]] void Fail(DecodeErrorKind kind, const std::string& what) {
  throw DecodeError(kind, what);
}

// Segment-level byte reader.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t Byte() {
    if (pos_ >= data_.size()) Fail(DecodeErrorKind::kTruncated, "unexpected end of data");
    return data_[pos_++];
  }
  uint16_t Word() {
    const uint16_t hi = Byte();
    return static_cast<uint16_t>((hi << 8) | Byte());
  }
  void Skip(size_t n) {
    if (data_.size() - pos_ < n) Fail(DecodeErrorKind::kTruncated, "segment runs past end of data");
    pos_ += n;
  }
  size_t pos() const { return pos_; }
  void set_pos(size_t p) { pos_ = p; }
  std::span<const uint8_t> data() const { return data_; }

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

// Annex F.2.2.3 decoding tables.
struct HuffmanDecoder {
  std::array<int32_t, 18> maxcode{};
  std::array<int32_t, 17> mincode{};
  std::array<int32_t, 17> valptr{};
  std::vector<uint8_t> values;

  explicit HuffmanDecoder(const HuffmanSpec& spec) : values(spec.values) {
    int32_t code = 0;
    int32_t k = 0;
    for (int len = 1; len <= 16; ++len) {
      if (spec.bits[len] == 0) {
        maxcode[len] = -1;
      } else {
        valptr[len] = k;
        mincode[len] = code;
        code += spec.bits[len];
        k += spec.bits[len];
        maxcode[len] = code - 1;
      }
      code <<= 1;
    }
    maxcode[17] = 0x7FFFFFFF;
  }
};

// Entropy-coded segment reader that undoes byte stuffing and refuses to
// read through a marker.
class BitReader {
 public:
  BitReader(std::span<const uint8_t> data, size_t pos) : data_(data), pos_(pos) {}

  int Bit() {
    if (nbits_ == 0) Load();
    --nbits_;
    return (cur_ >> nbits_) & 1;
  }

  uint32_t Bits(int n) {
    uint32_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | static_cast<uint32_t>(Bit());
    return v;
  }

  uint8_t Decode(const HuffmanDecoder& d) {
    int32_t code = Bit();
    int len = 1;
    while (len <= 16 && code > d.maxcode[len]) {
      code = (code << 1) | Bit();
      ++len;
    }
    if (len > 16) Fail(DecodeErrorKind::kBadHuffmanCode, "invalid Huffman code");
    return d.values[d.valptr[len] + code - d.mincode[len]];
  }

  // Drops the partial byte and consumes the expected RSTn marker.
  void Restart(int n) {
    nbits_ = 0;
    if (pos_ + 1 >= data_.size()) Fail(DecodeErrorKind::kTruncated, "missing restart marker");
    if (data_[pos_] != 0xFF || data_[pos_ + 1] != 0xD0 + (n & 7)) {
      Fail(DecodeErrorKind::kBadMarker, "expected RST" + std::to_string(n & 7));
    }
    pos_ += 2;
  }

  size_t pos() const { return pos_; }

 private:
  void Load() {
    if (pos_ >= data_.size()) Fail(DecodeErrorKind::kTruncated, "entropy-coded data truncated");
    const uint8_t b = data_[pos_++];
    if (b == 0xFF) {
      if (pos_ >= data_.size()) Fail(DecodeErrorKind::kTruncated, "entropy-coded data truncated");
      const uint8_t next = data_[pos_];
      if (next == 0x00) {
        ++pos_;
      } else if (next == 0xD9) {
        Fail(DecodeErrorKind::kTruncated, "EOI before the last MCU");
      } else if (next >= 0xD0 && next <= 0xD7) {
        Fail(DecodeErrorKind::kBadMarker, "unexpected restart marker in scan");
      } else {
        Fail(DecodeErrorKind::kBadStuffing, "0xFF in entropy-coded data not followed by a stuffed 0x00");
      }
    }
    cur_ = b;
    nbits_ = 8;
  }

  std::span<const uint8_t> data_;
  size_t pos_;
  uint32_t cur_ = 0;
  int nbits_ = 0;
};

struct FrameComponent {
  int id = 0;
  int h = 1;
  int v = 1;
  int tq = 0;
};

}  // namespace

DecodedJpeg DecodeJfif(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || bytes[0] != 0xFF || bytes[1] != 0xD8) {
    Fail(DecodeErrorKind::kNotJpeg, "missing SOI marker");
  }
  r.Skip(2);

  std::array<std::optional<QuantTable>, 4> qt;
  std::array<std::optional<HuffmanSpec>, 4> dc_tables;
  std::array<std::optional<HuffmanSpec>, 4> ac_tables;
  std::vector<FrameComponent> frame;
  int width = 0;
  int height = 0;
  int restart_interval = 0;
  DecodedJpeg out;
  bool scanned = false;

  for (;;) {
    if (r.Byte() != 0xFF) Fail(DecodeErrorKind::kBadMarker, "expected a marker");
    uint8_t marker = r.Byte();
    while (marker == 0xFF) marker = r.Byte();

    if (marker == 0xD9) {
      if (!scanned) Fail(DecodeErrorKind::kTruncated, "EOI before any scan");
      break;
    }
    if (scanned) Fail(DecodeErrorKind::kUnsupported, "only single-scan files are supported");
    if (marker == 0xD8 || (marker >= 0xD0 && marker <= 0xD7) || marker == 0x01) {
      Fail(DecodeErrorKind::kBadMarker, "unexpected standalone marker");
    }
    const size_t seg_start = r.pos();
    const uint16_t len = r.Word();
    if (len < 2) Fail(DecodeErrorKind::kBadMarker, "segment length below 2");
    const size_t seg_end = seg_start + len;
    if (seg_end > bytes.size()) Fail(DecodeErrorKind::kTruncated, "segment runs past end of data");

    if ((marker >= 0xE0 && marker <= 0xEF) || marker == 0xFE) {
      r.set_pos(seg_end);
    } else if (marker == 0xDB) {
      while (r.pos() < seg_end) {
        const uint8_t pq_tq = r.Byte();
        if ((pq_tq >> 4) != 0) Fail(DecodeErrorKind::kUnsupported, "16-bit quantization tables");
        const int id = pq_tq & 15;
        if (id > 3) Fail(DecodeErrorKind::kBadTable, "quantization table id > 3");
        std::array<int, kDctBlockSize> steps{};
        for (int k = 0; k < kDctBlockSize; ++k) {
          steps[k] = r.Byte();
          if (steps[k] == 0) Fail(DecodeErrorKind::kBadTable, "zero quantizer step");
        }
        qt[id] = QuantTable(steps);
      }
    } else if (marker == 0xC4) {
      while (r.pos() < seg_end) {
        const uint8_t tc_th = r.Byte();
        const int tc = tc_th >> 4;
        const int th = tc_th & 15;
        if (tc > 1 || th > 3) Fail(DecodeErrorKind::kBadTable, "bad Huffman table class/id");
        HuffmanSpec spec;
        size_t n = 0;
        for (int l = 1; l <= 16; ++l) {
          spec.bits[l] = r.Byte();
          n += spec.bits[l];
        }
        if (n > 256) Fail(DecodeErrorKind::kBadTable, "Huffman table with more than 256 codes");
        for (size_t i = 0; i < n; ++i) spec.values.push_back(r.Byte());
        try {
          spec.Validate();
        } catch (const InvalidArgument& e) {
          Fail(DecodeErrorKind::kBadTable, e.what());
        }
        (tc == 0 ? dc_tables : ac_tables)[th] = std::move(spec);
      }
    } else if (marker == 0xDD) {
      restart_interval = r.Word();
    } else if (marker == 0xC0) {
      if (r.Byte() != 8) Fail(DecodeErrorKind::kUnsupported, "sample precision other than 8");
      height = r.Word();
      width = r.Word();
      if (width == 0 || height == 0) Fail(DecodeErrorKind::kUnsupported, "zero or deferred image size");
      const int nc = r.Byte();
      if (nc != 3) Fail(DecodeErrorKind::kUnsupported, "only 3-component images are supported");
      for (int i = 0; i < nc; ++i) {
        FrameComponent fc;
        fc.id = r.Byte();
        const uint8_t hv = r.Byte();
        fc.h = hv >> 4;
        fc.v = hv & 15;
        fc.tq = r.Byte();
        if (fc.tq > 3) Fail(DecodeErrorKind::kBadTable, "quantization table id > 3");
        frame.push_back(fc);
      }
    } else if (marker >= 0xC1 && marker <= 0xCF && marker != 0xC4 &&
               marker != 0xC8 && marker != 0xCC) {
      Fail(DecodeErrorKind::kUnsupported, "only baseline sequential (SOF0) is supported");
    } else if (marker == 0xDA) {
      if (frame.empty()) Fail(DecodeErrorKind::kBadMarker, "SOS before SOF");
      const int ns = r.Byte();
      if (ns != 3) Fail(DecodeErrorKind::kUnsupported, "non-interleaved scans");
      std::array<int, 3> td{};
      std::array<int, 3> ta{};
      for (int i = 0; i < ns; ++i) {
        const int cs = r.Byte();
        if (cs != frame[i].id) Fail(DecodeErrorKind::kUnsupported, "scan component order differs from frame");
        const uint8_t sel = r.Byte();
        td[i] = sel >> 4;
        ta[i] = sel & 15;
        if (td[i] > 3 || ta[i] > 3) Fail(DecodeErrorKind::kBadTable, "Huffman selector > 3");
      }
      const int ss = r.Byte();
      const int se = r.Byte();
      const int ahal = r.Byte();
      if (ss != 0 || se != 63 || ahal != 0) Fail(DecodeErrorKind::kUnsupported, "non-sequential scan parameters");
      if (r.pos() != seg_end) Fail(DecodeErrorKind::kBadMarker, "SOS length mismatch");

      Subsampling subsampling;
      if (frame[0].h == 1 && frame[0].v == 1) {
        subsampling = Subsampling::k444;
      } else if (frame[0].h == 2 && frame[0].v == 2) {
        subsampling = Subsampling::k420;
      } else {
        Fail(DecodeErrorKind::kUnsupported, "luma sampling factors other than 1x1 or 2x2");
      }
      for (int i = 1; i < 3; ++i) {
        if (frame[i].h != 1 || frame[i].v != 1) Fail(DecodeErrorKind::kUnsupported, "chroma sampling factors other than 1x1");
      }
      if (frame[1].tq != frame[2].tq || td[1] != td[2] || ta[1] != ta[2]) {
        Fail(DecodeErrorKind::kUnsupported, "Cb and Cr must share tables");
      }
      for (int i = 0; i < 3; ++i) {
        if (!qt[frame[i].tq]) Fail(DecodeErrorKind::kMissingTable, "undefined quantization table");
        if (!dc_tables[td[i]] || !ac_tables[ta[i]]) Fail(DecodeErrorKind::kMissingTable, "undefined Huffman table");
      }

      JpegCoefficients& coeffs = out.coefficients;
      coeffs.width = width;
      coeffs.height = height;
      coeffs.subsampling = subsampling;
      coeffs.luma_q = *qt[frame[0].tq];
      coeffs.chroma_q = *qt[frame[1].tq];
      out.tables = {*dc_tables[td[0]], *ac_tables[ta[0]], *dc_tables[td[1]],
                    *ac_tables[ta[1]]};
      out.restart_interval = restart_interval;
      const ScanGeometry g = coeffs.geometry();
      for (int c = 0; c < kNumChannels; ++c) {
        coeffs.blocks[c].assign(size_t(g.blocks_wide[c]) * g.blocks_high[c], IndexBlock{});
      }
      const HuffmanDecoder dc_dec[2] = {HuffmanDecoder(out.tables.dc_luma),
                                        HuffmanDecoder(out.tables.dc_chroma)};
      const HuffmanDecoder ac_dec[2] = {HuffmanDecoder(out.tables.ac_luma),
                                        HuffmanDecoder(out.tables.ac_chroma)};

      BitReader bits(bytes, r.pos());
      std::array<int, kNumChannels> prev_dc{};
      int current_mcu = 0;
      int restarts = 0;
      ForEachScanBlock(g, subsampling, [&](int mcu, int comp, size_t idx) {
        if (mcu != current_mcu) {
          current_mcu = mcu;
          if (restart_interval > 0 && mcu % restart_interval == 0) {
            bits.Restart(restarts++);
            prev_dc = {};
          }
        }
        const int slot = comp == 0 ? 0 : 1;
        IndexBlock& b = coeffs.blocks[comp][idx];
        const int s = bits.Decode(dc_dec[slot]);
        if (s > kMaxDcSizeCategory) Fail(DecodeErrorKind::kBadCoefficient, "DC size category > 11");
        prev_dc[comp] += DecodeAmplitude(bits.Bits(s), s);
        b[0] = prev_dc[comp];
        for (int k = 1; k < kDctBlockSize;) {
          const uint8_t rs = bits.Decode(ac_dec[slot]);
          const int run = rs >> 4;
          const int size = rs & 15;
          if (size == 0) {
            if (run == 15) {
              k += 16;
              continue;
            }
            if (run != 0) Fail(DecodeErrorKind::kBadCoefficient, "AC symbol with size 0 and run < 15");
            break;
          }
          if (size > kMaxAcSizeCategory) Fail(DecodeErrorKind::kBadCoefficient, "AC size category > 10");
          k += run;
          if (k >= kDctBlockSize) Fail(DecodeErrorKind::kBadCoefficient, "AC coefficient index past 63");
          b[k++] = DecodeAmplitude(bits.Bits(size), size);
        }
      });
      r.set_pos(bits.pos());
      scanned = true;
    } else {
      Fail(DecodeErrorKind::kBadMarker, "unknown marker 0x" + std::to_string(marker));
    }
    if (!scanned && r.pos() != seg_end) {
      Fail(DecodeErrorKind::kBadMarker, "segment length mismatch");
    }
  }
  out.image = Reconstruct(out.coefficients);
  return out;
}

}  // namespace hmojpeg
