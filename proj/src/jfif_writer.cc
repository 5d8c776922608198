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

#include <cassert>

#include "hmojpeg/error.h"
#include "hmojpeg/huffman.h"
#include "hmojpeg/jfif.h"
#include "hmojpeg/run_length.h"

namespace hmojpeg {

namespace {

constexpr uint8_t kSoi = 0xD8;
constexpr uint8_t kEoi = 0xD9;
constexpr uint8_t kApp0 = 0xE0;
constexpr uint8_t kDqt = 0xDB;
constexpr uint8_t kSof0 = 0xC0;
constexpr uint8_t kDht = 0xC4;
constexpr uint8_t kDri = 0xDD;
constexpr uint8_t kSos = 0xDA;
constexpr uint8_t kRst0 = 0xD0;

void WriteApp0(Bitstream& out) {
  out.WriteMarker(kApp0);
  out.WriteWord(16);
  for (uint8_t c : {'J', 'F', 'I', 'F', '\0'}) out.WriteByte(c);
  out.WriteByte(1);  // version 1.01
  out.WriteByte(1);
  out.WriteByte(0);  // no units, 1:1 aspect
  out.WriteWord(1);
  out.WriteWord(1);
  out.WriteByte(0);  // no thumbnail
  out.WriteByte(0);
}

void WriteDqt(Bitstream& out, int id, const QuantTable& q) {
  out.WriteMarker(kDqt);
  out.WriteWord(2 + 1 + kDctBlockSize);
  out.WriteByte(static_cast<uint8_t>(id));  // 8-bit precision
  for (int k = 0; k < kDctBlockSize; ++k) {
    out.WriteByte(static_cast<uint8_t>(q[k]));
  }
}

void WriteSof0(Bitstream& out, const JpegCoefficients& c) {
  out.WriteMarker(kSof0);
  out.WriteWord(2 + 6 + 3 * kNumChannels);
  out.WriteByte(8);
  out.WriteWord(static_cast<uint16_t>(c.height));
  out.WriteWord(static_cast<uint16_t>(c.width));
  out.WriteByte(kNumChannels);
  const uint8_t luma_sampling = c.subsampling == Subsampling::k420 ? 0x22 : 0x11;
  out.WriteByte(1);
  out.WriteByte(luma_sampling);
  out.WriteByte(0);
  for (uint8_t id : {2, 3}) {
    out.WriteByte(id);
    out.WriteByte(0x11);
    out.WriteByte(1);
  }
}

void WriteDht(Bitstream& out, uint8_t class_and_id, const HuffmanSpec& spec) {
  out.WriteMarker(kDht);
  out.WriteWord(static_cast<uint16_t>(2 + 1 + 16 + spec.values.size()));
  out.WriteByte(class_and_id);
  for (int len = 1; len <= 16; ++len) out.WriteByte(spec.bits[len]);
  for (uint8_t v : spec.values) out.WriteByte(v);
}

void WriteSos(Bitstream& out) {
  out.WriteMarker(kSos);
  out.WriteWord(2 + 1 + 2 * kNumChannels + 3);
  out.WriteByte(kNumChannels);
  out.WriteByte(1);
  out.WriteByte(0x00);
  out.WriteByte(2);
  out.WriteByte(0x11);
  out.WriteByte(3);
  out.WriteByte(0x11);
  out.WriteByte(0);   // Ss
  out.WriteByte(63);  // Se
  out.WriteByte(0);   // Ah/Al
}

// Emits |symbol| and returns the number of code bits.
int PutSymbol(Bitstream& out, const HuffmanEncoder& enc, uint8_t symbol) {
  if (!enc.has_code(symbol)) {
    throw InvalidArgument("Huffman table has no code for symbol " +
                          std::to_string(symbol));
  }
  out.PutBits(enc.code(symbol), enc.length(symbol));
  return enc.length(symbol);
}

}  // namespace

void Bitstream::WriteWord(uint16_t w) {
  bytes_.push_back(static_cast<uint8_t>(w >> 8));
  bytes_.push_back(static_cast<uint8_t>(w & 0xFF));
}

void Bitstream::WriteMarker(uint8_t code) {
  if (acc_bits_ != 0) {
    throw InvalidArgument("marker written with a partial entropy-coded byte");
  }
  markers_.push_back({code, bytes_.size()});
  bytes_.push_back(0xFF);
  bytes_.push_back(code);
}

void Bitstream::PutBits(uint32_t bits, int count) {
  assert(count >= 0 && count <= 24);
  if (count == 0) return;
  acc_ = (acc_ << count) | (bits & ((1u << count) - 1));
  acc_bits_ += count;
  while (acc_bits_ >= 8) {
    const uint8_t b = static_cast<uint8_t>(acc_ >> (acc_bits_ - 8));
    bytes_.push_back(b);
    if (b == 0xFF) bytes_.push_back(0x00);
    acc_bits_ -= 8;
  }
  acc_ &= (1u << acc_bits_) - 1;
}

void Bitstream::FlushBits() {
  if (acc_bits_ > 0) PutBits(0x7F, 8 - acc_bits_);
}

EncodedJpeg EncodeJfif(const JpegCoefficients& coefficients,
                       const HuffmanTables& tables,
                       const EncodeOptions& options) {
  coefficients.Validate();
  if (options.restart_interval < 0 || options.restart_interval > 65535) {
    throw InvalidArgument("restart interval out of range");
  }
  const HuffmanEncoder dc_enc[2] = {HuffmanEncoder(tables.dc_luma),
                                    HuffmanEncoder(tables.dc_chroma)};
  const HuffmanEncoder ac_enc[2] = {HuffmanEncoder(tables.ac_luma),
                                    HuffmanEncoder(tables.ac_chroma)};

  Bitstream out;
  out.WriteMarker(kSoi);
  WriteApp0(out);
  WriteDqt(out, 0, coefficients.luma_q);
  WriteDqt(out, 1, coefficients.chroma_q);
  WriteSof0(out, coefficients);
  WriteDht(out, 0x00, tables.dc_luma);
  WriteDht(out, 0x10, tables.ac_luma);
  WriteDht(out, 0x01, tables.dc_chroma);
  WriteDht(out, 0x11, tables.ac_chroma);
  if (options.restart_interval > 0) {
    out.WriteMarker(kDri);
    out.WriteWord(4);
    out.WriteWord(static_cast<uint16_t>(options.restart_interval));
  }
  WriteSos(out);
  const size_t scan_start = out.size();

  RateReport rate;
  std::array<int, kNumChannels> prev_dc{};
  int current_mcu = 0;
  int restarts = 0;
  ForEachScanBlock(
      coefficients.geometry(), coefficients.subsampling,
      [&](int mcu, int comp, size_t idx) {
        if (mcu != current_mcu) {
          current_mcu = mcu;
          if (options.restart_interval > 0 &&
              mcu % options.restart_interval == 0) {
            out.FlushBits();
            out.WriteMarker(static_cast<uint8_t>(kRst0 + (restarts++ & 7)));
            prev_dc = {};
          }
        }
        const int slot = comp == 0 ? 0 : 1;
        const IndexBlock& b = coefficients.blocks[comp][idx];
        const RunLengthSequence seq = BuildRunLengths(b, prev_dc[comp]);
        prev_dc[comp] = b[0];

        uint64_t bits = PutSymbol(out, dc_enc[slot], seq.dc_size);
        out.PutBits(AmplitudeBits(seq.dc_diff, seq.dc_size), seq.dc_size);
        bits += seq.dc_size;
        rate.dc_symbol_bits += bits;

        uint64_t ac_bits = 0;
        for (const RunLengthSymbol& sym : seq.ac) {
          ac_bits += PutSymbol(out, ac_enc[slot], sym.symbol());
          if (sym.size > 0) {
            out.PutBits(AmplitudeBits(sym.amplitude, sym.size), sym.size);
            ac_bits += sym.size;
          }
        }
        rate.ac_symbol_bits += ac_bits;
      });
  out.FlushBits();
  const size_t scan_end = out.size();
  out.WriteMarker(kEoi);

  EncodedJpeg result;
  result.markers = out.markers();
  result.bytes = out.TakeBytes();
  rate.symbol_bits = rate.dc_symbol_bits + rate.ac_symbol_bits;
  rate.total_bits = 8 * uint64_t(result.bytes.size());
  rate.entropy_coded_bits = 8 * uint64_t(scan_end - scan_start);
  rate.header_bits = rate.total_bits - rate.entropy_coded_bits;
  rate.bpp = double(rate.total_bits) /
             (double(coefficients.width) * double(coefficients.height));
  result.rate = rate;
  return result;
}

}  // namespace hmojpeg
