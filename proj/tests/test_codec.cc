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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "hmojpeg/color.h"
#include "hmojpeg/dct.h"
#include "hmojpeg/error.h"
#include "hmojpeg/huffman.h"
#include "hmojpeg/image_io.h"
#include "hmojpeg/jfif.h"
#include "hmojpeg/metrics.h"
#include "hmojpeg/run_length.h"
#include "support/oracles.h"
#include "support/reference_decoder.h"

namespace hmojpeg {
namespace {

RgbImage RandomImage(std::mt19937_64& rng, int w, int h) {
  std::vector<uint8_t> s(size_t(w) * h * 3);
  for (auto& v : s) v = uint8_t(rng());
  return RgbImage(w, h, std::move(s));
}

RgbImage Solid(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      uint8_t* p = img.pixel(x, y);
      p[0] = r;
      p[1] = g;
      p[2] = b;
    }
  }
  return img;
}

// ---- color ----

TEST_CASE("achromatic and black pixels map to neutral chroma") {
  auto gray = RgbToYccPixel(128, 128, 128);
  CHECK(gray[0] == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(gray[1] == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(gray[2] == doctest::Approx(128.0).epsilon(1e-12));
  auto black = RgbToYccPixel(0, 0, 0);
  CHECK(black[0] == doctest::Approx(0.0));
  CHECK(black[1] == doctest::Approx(128.0));
  CHECK(black[2] == doctest::Approx(128.0));
}

TEST_CASE("pure red matches the BT.601 full-range matrix") {
  // Y = 0.299 * 255, Cb = 128 - 0.168736 * 255, Cr = 128 + 0.5 * 255 -> 255.
  auto red = RgbToYccPixel(255, 0, 0);
  CHECK(red[0] == doctest::Approx(76.245).epsilon(1e-6));
  CHECK(red[1] == doctest::Approx(128.0 - 0.168735892 * 255.0).epsilon(1e-9));
  CHECK(red[1] == doctest::Approx(84.97).epsilon(1e-3));
  CHECK(red[2] == 255.0);
}

TEST_CASE("YCbCr round trip is within one level per channel") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20000; ++i) {
    const int r = int(rng() & 255), g = int(rng() & 255), b = int(rng() & 255);
    const auto ycc = RgbToYccPixel(r, g, b);
    const auto rgb = YccToRgbPixel(ycc[0], ycc[1], ycc[2]);
    CHECK(std::abs(rgb[0] - r) <= 1);
    CHECK(std::abs(rgb[1] - g) <= 1);
    CHECK(std::abs(rgb[2] - b) <= 1);
  }
}

TEST_CASE("planes are padded to whole MCUs by edge replication") {
  std::mt19937_64 rng(5);
  const RgbImage img = RandomImage(rng, 13, 9);
  const YccPlanes p444 = RgbToYcc(img, Subsampling::k444);
  CHECK(p444.planes[0].width == 16);
  CHECK(p444.planes[0].height == 16);
  CHECK(p444.planes[0].at(15, 3) == p444.planes[0].at(12, 3));
  CHECK(p444.planes[2].at(4, 15) == p444.planes[2].at(4, 8));
  const YccPlanes p420 = RgbToYcc(img, Subsampling::k420);
  CHECK(p420.planes[0].width == 16);
  CHECK(p420.planes[1].width == 8);
  CHECK(p420.planes[1].height == 8);
}

// ---- DCT ----

TEST_CASE("DCT of zero and constant blocks") {
  SpatialBlock zero{};
  for (double c : FdctBlock(zero)) CHECK(c == 0.0);
  SpatialBlock constant;
  constant.fill(-37.5);
  const DctBlock d = FdctBlock(constant);
  CHECK(d[0] == doctest::Approx(8 * -37.5).epsilon(1e-12));
  for (int k = 1; k < 64; ++k) CHECK(std::abs(d[k]) < 1e-12);
}

TEST_CASE("DCT matches the direct cosine-sum oracle and preserves energy") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-128.0, 127.0);
  for (int t = 0; t < 200; ++t) {
    SpatialBlock s;
    for (double& v : s) v = u(rng);
    const DctBlock d = FdctBlock(s);
    const auto oracle = testing::DirectDct(s);
    double es = 0.0, ed = 0.0;
    for (int k = 0; k < 64; ++k) {
      CHECK(std::abs(d[k] - oracle[k]) < 1e-6);
      es += s[k] * s[k];
      ed += d[k] * d[k];
    }
    CHECK(std::abs(es - ed) <= 1e-6 * es);
    const SpatialBlock back = IdctBlock(d);
    const auto oracle_back = testing::DirectIdct(d);
    for (int k = 0; k < 64; ++k) {
      CHECK(std::abs(back[k] - s[k]) < 1e-9);
      CHECK(std::abs(oracle_back[k] - s[k]) < 1e-9);
    }
  }
}

TEST_CASE("hard quantization rounds half away from zero") {
  std::array<int, 64> steps;
  steps.fill(10);
  const QuantTable q(steps);
  DctBlock x{};
  x[0] = 50;
  x[1] = -15;
  x[2] = 15;
  x[3] = 14.999;
  const IndexBlock i = HardQuantize(x, q);
  CHECK(i[0] == 5);
  CHECK(i[1] == -2);
  CHECK(i[2] == 2);
  CHECK(i[3] == 1);
}

TEST_CASE("hard quantization equals a scalar loop") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  std::uniform_int_distribution<int> st(1, 255);
  for (int t = 0; t < 500; ++t) {
    DctBlock x;
    std::array<int, 64> steps;
    for (int k = 0; k < 64; ++k) {
      x[k] = u(rng);
      steps[k] = st(rng);
    }
    const IndexBlock got = HardQuantize(x, QuantTable(steps));
    for (int k = 0; k < 64; ++k) {
      const double r = x[k] / steps[k];
      const int want = r >= 0 ? int(std::floor(r + 0.5)) : -int(std::floor(-r + 0.5));
      CHECK(got[k] == want);
    }
  }
}

TEST_CASE("hard quantization flags AC overflow") {
  DctBlock x{};
  x[4] = 1024.0;
  CHECK_THROWS_AS(HardQuantize(x, QuantTable()), InvalidArgument);
}

// ---- Huffman ----

double Kraft(const HuffmanSpec& spec) {
  double k = 0.0;
  for (int l = 1; l <= 16; ++l) k += spec.bits[l] * std::ldexp(1.0, -l);
  return k;
}

std::vector<int> LengthsBySymbol(const HuffmanSpec& spec, int n) {
  std::vector<int> out(n, 0);
  const std::vector<int> lens = spec.CodeLengths();
  for (size_t i = 0; i < spec.values.size(); ++i) out[spec.values[i]] = lens[i];
  return out;
}

TEST_CASE("textbook Huffman lengths") {
  const double uniform[4] = {1, 1, 1, 1};
  CHECK(HuffmanCodeLengths(uniform) == std::vector<int>{2, 2, 2, 2});
  const double skewed[4] = {0.5, 0.25, 0.125, 0.125};
  CHECK(HuffmanCodeLengths(skewed) == std::vector<int>{1, 2, 3, 3});
  const double one[1] = {3.0};
  CHECK(HuffmanCodeLengths(one) == std::vector<int>{1});
}

TEST_CASE("JPEG-legal tables reserve the all-ones code") {
  const double one[1] = {3.0};
  const HuffmanSpec single = BuildHuffman(one);
  CHECK(LengthsBySymbol(single, 1) == std::vector<int>{1});
  CHECK(Kraft(single) < 1.0);

  const double uniform[4] = {1, 1, 1, 1};
  const HuffmanSpec u = BuildHuffman(uniform);
  CHECK(LengthsBySymbol(u, 4) == std::vector<int>{2, 2, 2, 3});
  const double skewed[4] = {0.5, 0.25, 0.125, 0.125};
  const HuffmanSpec s = BuildHuffman(skewed);
  CHECK(LengthsBySymbol(s, 4) == std::vector<int>{1, 2, 3, 4});
  CHECK_NOTHROW(u.Validate());
  CHECK_NOTHROW(s.Validate());
}

TEST_CASE("legal tables cap lengths at 16 and stay within a bit of entropy") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + int(rng() % 200);
    std::vector<double> w(n);
    const bool steep = t % 3 == 0;
    for (int i = 0; i < n; ++i) {
      w[i] = steep ? std::pow(0.5, i % 40) + 1e-12 : 1.0 + double(rng() % 1000);
    }
    const HuffmanSpec spec = BuildHuffman(w);
    CHECK_NOTHROW(spec.Validate());
    CHECK(Kraft(spec) < 1.0);
    const auto lens = LengthsBySymbol(spec, n);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double avg = 0.0, entropy = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(lens[i] >= 1);
      CHECK(lens[i] <= 16);
      const double p = w[i] / total;
      avg += p * lens[i];
      entropy -= p * std::log2(p);
    }
    if (!steep) CHECK(avg < entropy + 1.0);
  }
}

TEST_CASE("more than 256 symbols or none at all is rejected") {
  std::vector<double> many(257, 1.0);
  CHECK_THROWS_AS(BuildHuffman(many), InvalidArgument);
  std::vector<double> none(10, 0.0);
  CHECK_THROWS_AS(BuildHuffman(none), InvalidArgument);
}

TEST_CASE("Annex K tables are legal and complete for their alphabets") {
  for (const HuffmanSpec* s : {&StandardDcLuma(), &StandardDcChroma()}) {
    CHECK_NOTHROW(s->Validate());
    CHECK(s->values.size() == 12);
  }
  for (const HuffmanSpec* s : {&StandardAcLuma(), &StandardAcChroma()}) {
    CHECK_NOTHROW(s->Validate());
    CHECK(s->values.size() == 162);
  }
  const HuffmanEncoder enc(StandardAcLuma());
  CHECK(enc.length(kEobSymbol) == 4);
  CHECK(enc.code(kEobSymbol) == 0xA);
  CHECK(enc.length(kZrlSymbol) == 11);
  CHECK(enc.code(kZrlSymbol) == 0x7F9);
  CHECK(enc.length(0x01) == 2);
  CHECK(enc.code(0x01) == 0x0);
}

TEST_CASE("illegal Huffman specs are rejected") {
  HuffmanSpec full;
  full.bits[1] = 2;
  full.values = {0, 1};
  CHECK_THROWS_AS(full.Validate(), InvalidArgument);
  HuffmanSpec mismatch;
  mismatch.bits[2] = 2;
  mismatch.values = {0};
  CHECK_THROWS_AS(mismatch.Validate(), InvalidArgument);
}

// ---- bitstream ----

TEST_CASE("bitstream stuffs 0xFF and pads with ones") {
  Bitstream bs;
  bs.PutBits(0xFF, 8);
  bs.PutBits(0x1, 1);
  bs.FlushBits();
  CHECK(bs.bytes() == std::vector<uint8_t>{0xFF, 0x00, 0xFF, 0x00});
  Bitstream partial;
  partial.PutBits(0x0, 3);
  CHECK_THROWS(partial.WriteMarker(0xD9));
}

// ---- JFIF ----

TEST_CASE("minimal 8x8 gray image decodes in libjpeg") {
  const RgbImage img = Solid(8, 8, 128, 128, 128);
  const EncodedJpeg jpeg = EncodeBaseline(img, 75, Subsampling::k444, false);
  const auto ref = testing::DecodeWithLibjpeg(jpeg.bytes);
  REQUIRE_MESSAGE(ref.ok, ref.error);
  CHECK(ref.warnings == 0);
  CHECK(ref.image == img);
  CHECK(DecodeJfif(jpeg.bytes).image == img);
}

TEST_CASE("marker order of an emitted file") {
  std::mt19937_64 rng(19);
  const EncodedJpeg jpeg = EncodeBaseline(RandomImage(rng, 20, 12), 50, Subsampling::k444, true);
  std::vector<uint8_t> codes;
  for (const MarkerEntry& m : jpeg.markers) codes.push_back(m.code);
  const std::vector<uint8_t> want = {0xD8, 0xE0, 0xDB, 0xDB, 0xC0, 0xC4,
                                     0xC4, 0xC4, 0xC4, 0xDA, 0xD9};
  CHECK(codes == want);
  CHECK(jpeg.bytes[0] == 0xFF);
  CHECK(jpeg.bytes[1] == 0xD8);
  CHECK(jpeg.bytes[jpeg.bytes.size() - 2] == 0xFF);
  CHECK(jpeg.bytes.back() == 0xD9);
}

TEST_CASE("rate report invariants") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const int w = 1 + int(rng() % 70), h = 1 + int(rng() % 70);
    const Subsampling sub = t % 2 ? Subsampling::k420 : Subsampling::k444;
    const JpegCoefficients c = testing::RandomCoefficients(rng, w, h, sub);
    const HuffmanTables tables = t % 3 ? OptimalHuffmanTables(c) : HuffmanTables::Standard();
    const EncodedJpeg jpeg = EncodeJfif(c, tables);
    const RateReport& r = jpeg.rate;
    CHECK(r.total_bits == jpeg.bytes.size() * 8);
    CHECK(r.total_bits == r.header_bits + r.entropy_coded_bits);
    CHECK(r.bpp == doctest::Approx(8.0 * jpeg.bytes.size() / (double(w) * h)));
    CHECK(r.bpp > 0.0);

    // Independent recount of code word + amplitude bits.
    const HuffmanEncoder enc[4] = {HuffmanEncoder(tables.dc_luma), HuffmanEncoder(tables.ac_luma),
                                   HuffmanEncoder(tables.dc_chroma),
                                   HuffmanEncoder(tables.ac_chroma)};
    uint64_t bits = 0;
    std::array<int, 3> prev{};
    ForEachScanBlock(c.geometry(), sub, [&](int, int comp, size_t idx) {
      const IndexBlock& b = c.blocks[comp][idx];
      const RunLengthSequence seq = BuildRunLengths(b, prev[comp]);
      prev[comp] = b[0];
      const int slot = comp == 0 ? 0 : 2;
      bits += enc[slot].length(seq.dc_size) + seq.dc_size;
      for (const auto& s : seq.ac) bits += enc[slot + 1].length(s.symbol()) + s.size;
    });
    CHECK(r.symbol_bits == bits);
    CHECK(r.symbol_bits == r.dc_symbol_bits + r.ac_symbol_bits);
    const uint64_t pad = (8 - bits % 8) % 8;
    CHECK(r.entropy_coded_bits ==
          bits + pad + 8 * uint64_t(testing::CountStuffedBytes(jpeg.bytes)));
  }
}

TEST_CASE("entropy layer is lossless and agrees with libjpeg") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    const int w = 1 + int(rng() % 60), h = 1 + int(rng() % 60);
    const Subsampling sub = t % 2 ? Subsampling::k420 : Subsampling::k444;
    const JpegCoefficients c = testing::RandomCoefficients(rng, w, h, sub);
    EncodeOptions opt;
    opt.restart_interval = t % 4 == 3 ? 1 + int(rng() % 5) : 0;
    const EncodedJpeg jpeg =
        EncodeJfif(c,
                   t % 2 ? OptimalHuffmanTables(c, opt.restart_interval) : HuffmanTables::Standard(),
                   opt);
    const DecodedJpeg d = DecodeJfif(jpeg.bytes);
    CHECK(d.coefficients.blocks == c.blocks);
    CHECK(d.coefficients.luma_q == c.luma_q);
    CHECK(d.coefficients.chroma_q == c.chroma_q);
    CHECK(d.restart_interval == opt.restart_interval);
    const auto ref = testing::DecodeWithLibjpeg(jpeg.bytes, true);
    REQUIRE_MESSAGE(ref.ok, ref.error);
    CHECK(ref.warnings == 0);
    for (int comp = 0; comp < 3; ++comp) CHECK(ref.coefficients[comp] == c.blocks[comp]);
  }
}

TEST_CASE("own decoder is within 0.1 dB of libjpeg on real images") {
  const auto images = testing::CorpusImages();
  REQUIRE(images.size() >= 4);
  for (size_t i = 0; i < 4; ++i) {
    const RgbImage img = ReadLosslessImage(images[i * 7 % images.size()]);
    for (Subsampling sub : {Subsampling::k444, Subsampling::k420}) {
      const EncodedJpeg jpeg = EncodeBaseline(img, 60, sub, true);
      const auto ref = testing::DecodeWithLibjpeg(jpeg.bytes);
      REQUIRE_MESSAGE(ref.ok, ref.error);
      const double own = Psnr(img, DecodeJfif(jpeg.bytes).image);
      const double theirs = Psnr(img, ref.image);
      CHECK(own >= theirs - 0.1);
    }
  }
}

TEST_CASE("higher quality gives higher PSNR") {
  const RgbImage img = ReadLosslessImage(testing::CorpusImages()[0]);
  const double q90 = Psnr(img, DecodeJfif(EncodeBaseline(img, 90, Subsampling::k444, false).bytes).image);
  const double q10 = Psnr(img, DecodeJfif(EncodeBaseline(img, 10, Subsampling::k444, false).bytes).image);
  CHECK(q90 > q10);
}

TEST_CASE("decoder diagnostics are distinct") {
  std::mt19937_64 rng(31);
  const EncodedJpeg jpeg = EncodeBaseline(RandomImage(rng, 32, 32), 50, Subsampling::k444, false);
  auto kind_of = [](const std::vector<uint8_t>& bytes) {
    try {
      DecodeJfif(bytes);
    } catch (const DecodeError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  // Locate a stuffed 0xFF 0x00 pair in the scan and break it.
  size_t sos = 0;
  for (const MarkerEntry& m : jpeg.markers) {
    if (m.code == 0xDA) sos = m.offset;
  }
  std::vector<uint8_t> tampered = jpeg.bytes;
  size_t at = 0;
  for (size_t i = sos + 14; i + 1 < tampered.size() - 2; ++i) {
    if (tampered[i] == 0xFF && tampered[i + 1] == 0x00) {
      at = i;
      break;
    }
  }
  REQUIRE(at != 0);
  tampered[at + 1] = 0x13;
  CHECK(kind_of(tampered) == int(DecodeErrorKind::kBadStuffing));

  std::vector<uint8_t> truncated(jpeg.bytes.begin(), jpeg.bytes.begin() + jpeg.bytes.size() / 2);
  CHECK(kind_of(truncated) == int(DecodeErrorKind::kTruncated));

  std::vector<uint8_t> not_jpeg = {0x89, 'P', 'N', 'G'};
  CHECK(kind_of(not_jpeg) == int(DecodeErrorKind::kNotJpeg));

  std::vector<uint8_t> progressive = jpeg.bytes;
  for (const MarkerEntry& m : jpeg.markers) {
    if (m.code == 0xC0) progressive[m.offset + 1] = 0xC2;
  }
  CHECK(kind_of(progressive) == int(DecodeErrorKind::kUnsupported));

  std::vector<uint8_t> zero_step = jpeg.bytes;
  for (const MarkerEntry& m : jpeg.markers) {
    if (m.code == 0xDB) {
      zero_step[m.offset + 5] = 0;
      break;
    }
  }
  CHECK(kind_of(zero_step) == int(DecodeErrorKind::kBadTable));
}

// ---- metrics ----

TEST_CASE("PSNR special values") {
  std::mt19937_64 rng(37);
  const RgbImage a = RandomImage(rng, 10, 7);
  CHECK(Psnr(a, a) == kPsnrCap);
  const RgbImage zero = Solid(4, 4, 0, 0, 0);
  const RgbImage one = Solid(4, 4, 1, 1, 1);
  CHECK(Psnr(zero, one) == doctest::Approx(48.1308).epsilon(1e-5));
  CHECK(Psnr(zero, Solid(4, 4, 255, 255, 255)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(Psnr(zero, Solid(4, 5, 0, 0, 0)), InvalidArgument);
}

TEST_CASE("BPP is file bits over pixels") {
  CHECK(BitsPerPixel(1000, 100, 80) == doctest::Approx(1.0));
  CHECK_THROWS_AS(BitsPerPixel(10, 0, 5), InvalidArgument);
}

}  // namespace
}  // namespace hmojpeg
