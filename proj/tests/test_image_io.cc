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

#include <filesystem>
#include <random>

#include "hmojpeg/error.h"
#include "hmojpeg/image_io.h"
#include "hmojpeg/jfif.h"
#include "support/oracles.h"

namespace hmojpeg {
namespace {

namespace fs = std::filesystem;

RgbImage RandomImage(std::mt19937_64& rng, int w, int h) {
  RgbImage img(w, h);
  for (auto& v : img.mutable_samples()) v = uint8_t(rng());
  return img;
}

std::vector<uint8_t> Bytes(const std::string& s) { return {s.begin(), s.end()}; }

void PutLe(std::vector<uint8_t>& b, size_t at, uint32_t v, int n) {
  for (int i = 0; i < n; ++i) b[at + i] = uint8_t(v >> (8 * i));
}

// Uncompressed BMP assembled field by field.
std::vector<uint8_t> MakeBmp(const RgbImage& img, int bpp, bool top_down) {
  const int w = img.width(), h = img.height();
  const size_t row = (size_t(w) * (bpp / 8) + 3) / 4 * 4;
  std::vector<uint8_t> b(54 + row * h, 0);
  b[0] = 'B';
  b[1] = 'M';
  PutLe(b, 2, uint32_t(b.size()), 4);
  PutLe(b, 10, 54, 4);
  PutLe(b, 14, 40, 4);
  PutLe(b, 18, uint32_t(w), 4);
  PutLe(b, 22, uint32_t(top_down ? -h : h), 4);
  PutLe(b, 26, 1, 2);
  PutLe(b, 28, uint32_t(bpp), 2);
  for (int y = 0; y < h; ++y) {
    const int file_row = top_down ? y : h - 1 - y;
    uint8_t* p = &b[54 + row * file_row];
    for (int x = 0; x < w; ++x) {
      const uint8_t* px = img.pixel(x, y);
      p[0] = px[2];
      p[1] = px[1];
      p[2] = px[0];
      if (bpp == 32) p[3] = 0xAB;
      p += bpp / 8;
    }
  }
  return b;
}

std::string TempDir() {
  const fs::path d = fs::temp_directory_path() / "hmojpeg_io_test";
  fs::create_directories(d);
  return d.string();
}

TEST_CASE("format sniffing") {
  CHECK(DetectFormat(Bytes("\x89PNG\r\n\x1a\n")) == ImageFormat::kPng);
  CHECK(DetectFormat(Bytes("P6 1 1 255 ")) == ImageFormat::kPpm);
  CHECK(DetectFormat(Bytes("P5 1 1 255 ")) == ImageFormat::kPpm);
  CHECK(DetectFormat(Bytes("BM......")) == ImageFormat::kBmp);
  CHECK(DetectFormat(std::vector<uint8_t>{0xFF, 0xD8, 0xFF, 0xE0}) == ImageFormat::kJpeg);
  CHECK(DetectFormat(Bytes("GIF89a")) == ImageFormat::kUnknown);
  CHECK(DetectFormat({}) == ImageFormat::kUnknown);
}

TEST_CASE("PNG and PPM round trip exactly") {
  std::mt19937_64 rng(101);
  for (auto [w, h] : {std::pair{1, 1}, std::pair{7, 3}, std::pair{64, 65}}) {
    const RgbImage img = RandomImage(rng, w, h);
    CHECK(DecodePng(EncodePng(img)) == img);
    CHECK(DecodePnm(EncodePpm(img)) == img);
    CHECK(DecodeLosslessImage(EncodePng(img)) == img);
  }
}

TEST_CASE("PGM is replicated to RGB and maxval is rescaled") {
  const std::string header = "P5\n# comment\n3 1\n15\n";
  std::vector<uint8_t> b = Bytes(header);
  b.insert(b.end(), {0, 7, 15});
  const RgbImage img = DecodePnm(b);
  REQUIRE(img.width() == 3);
  const uint8_t want[] = {0, (7 * 255 + 7) / 15, 255};
  for (int x = 0; x < 3; ++x) {
    for (int c = 0; c < 3; ++c) CHECK(img.pixel(x, 0)[c] == want[x]);
  }
}

TEST_CASE("PNM errors") {
  CHECK_THROWS_AS(DecodePnm(Bytes("P6\n2 2\n255\n\x01\x02")), IoError);
  CHECK_THROWS_AS(DecodePnm(Bytes("P6\n2 2\n65535\n")), UnsupportedFormat);
  CHECK_THROWS_AS(DecodePnm(Bytes("P6\nx 2\n255\n")), IoError);
}

TEST_CASE("BMP variants decode") {
  std::mt19937_64 rng(103);
  for (int w : {1, 2, 3, 5}) {
    const RgbImage img = RandomImage(rng, w, 4);
    CHECK(DecodeBmp(MakeBmp(img, 24, false)) == img);
    CHECK(DecodeBmp(MakeBmp(img, 24, true)) == img);
    CHECK(DecodeBmp(MakeBmp(img, 32, false)) == img);
  }
}

TEST_CASE("BMP errors") {
  std::mt19937_64 rng(107);
  const RgbImage img = RandomImage(rng, 4, 4);
  std::vector<uint8_t> b = MakeBmp(img, 24, false);
  std::vector<uint8_t> rle = b;
  PutLe(rle, 30, 1, 4);
  CHECK_THROWS_AS(DecodeBmp(rle), UnsupportedFormat);
  std::vector<uint8_t> eight = b;
  PutLe(eight, 28, 8, 2);
  CHECK_THROWS_AS(DecodeBmp(eight), UnsupportedFormat);
  b.resize(b.size() - 5);
  CHECK_THROWS_AS(DecodeBmp(b), IoError);
}

TEST_CASE("lossy and unknown inputs are rejected as unsupported") {
  std::mt19937_64 rng(109);
  const RgbImage img = RandomImage(rng, 16, 16);
  const EncodedJpeg jpeg = EncodeBaseline(img, 90, Subsampling::k444, false);
  CHECK_THROWS_AS(DecodeLosslessImage(jpeg.bytes), UnsupportedFormat);
  CHECK(DecodeAnyImage(jpeg.bytes) == DecodeJfif(jpeg.bytes).image);
  CHECK_THROWS_AS(DecodeLosslessImage(Bytes("GIF89a....")), UnsupportedFormat);
  CHECK_THROWS_AS(DecodePng(Bytes("\x89PNG\r\n\x1a\nbroken")), IoError);
}

TEST_CASE("corpus images load") {
  const auto images = testing::CorpusImages();
  CHECK(images.size() == 30);
  for (const auto& p : images) {
    const RgbImage img = ReadLosslessImage(p);
    CHECK(std::min(img.width(), img.height()) >= 224);
  }
}

TEST_CASE("atomic writes replace whole files and leave nothing behind on failure") {
  const std::string dir = TempDir();
  const std::string path = dir + "/atomic.bin";
  WriteFileAtomic(path, Bytes("first version, long"));
  WriteFileAtomic(path, Bytes("second"));
  CHECK(ReadFileBytes(path) == Bytes("second"));
  CHECK(fs::status(path).permissions() == (fs::perms::owner_read | fs::perms::owner_write |
                                           fs::perms::group_read | fs::perms::others_read));
  CHECK_THROWS_AS(WriteFileAtomic(dir + "/missing/x.bin", Bytes("x")), IoError);
  CHECK_THROWS_AS(ReadFileBytes(dir + "/missing.bin"), IoError);
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) entries += e.path().filename() != "atomic.bin";
  CHECK(entries == 0);
  fs::remove_all(dir);
}

TEST_CASE("WriteImage picks the format from the extension") {
  std::mt19937_64 rng(113);
  const RgbImage img = RandomImage(rng, 9, 9);
  const std::string dir = TempDir();
  WriteImage(img, dir + "/a.ppm");
  WriteImage(img, dir + "/a.png");
  CHECK(DetectFormat(ReadFileBytes(dir + "/a.ppm")) == ImageFormat::kPpm);
  CHECK(DetectFormat(ReadFileBytes(dir + "/a.png")) == ImageFormat::kPng);
  CHECK(ReadLosslessImage(dir + "/a.ppm") == img);
  CHECK(ReadLosslessImage(dir + "/a.png") == img);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace hmojpeg
