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
#include <fstream>
#include <sstream>

#include "hmojpeg/cli.h"
#include "hmojpeg/image_io.h"
#include "hmojpeg/jfif.h"
#include "hmojpeg/manifest.h"
#include "hmojpeg/metrics.h"
#include "hmojpeg/sensitivity.h"
#include "support/oracles.h"
#include "support/reference_decoder.h"

namespace hmojpeg {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Run(std::vector<std::string> args) {
  args.insert(args.begin(), "hmojpeg");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("hmojpeg_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }
  std::string str() const { return path_.string(); }
  size_t count() const {
    size_t n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(path_)) ++n;
    return n;
  }

 private:
  fs::path path_;
};

RgbImage Crop(const RgbImage& img, int w, int h) {
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) std::copy_n(img.pixel(x, y), 3, out.pixel(x, y));
  }
  return out;
}

std::string Field(const std::string& text, const std::string& key) {
  const size_t at = text.find(key + "=");
  REQUIRE(at != std::string::npos);
  const size_t start = at + key.size() + 1;
  return text.substr(start, text.find_first_of(" \n", start) - start);
}

const std::string kSample = testing::SampleSensitivityPath();

TEST_CASE("compress writes a JPEG and a manifest row") {
  TempDir dir("compress");
  const std::string in = dir / "img.png";
  fs::copy_file(testing::CorpusImages()[0], in);
  const Outcome r = Run({"compress", "--lambda", "1e12", "--beta", "50", "--sensitivity", kSample,
                         "--manifest", dir / "m.csv", in});
  INFO(r.err);
  REQUIRE(r.code == kExitOk);
  const std::string jpg = dir / "img.jpg";
  REQUIRE(fs::exists(jpg));
  const std::vector<uint8_t> bytes = ReadFileBytes(jpg);
  CHECK(testing::DecodeWithLibjpeg(bytes).ok);

  std::ifstream f(dir / "m.csv");
  std::stringstream ss;
  ss << f.rdbuf();
  const auto rows = ParseManifest(ss.str());
  REQUIRE(rows.size() == 1);
  const ManifestRow& row = rows[0];
  CHECK(row.kind == "hmosdq");
  CHECK(row.output == jpg);
  CHECK(row.lambda == 1e12);
  CHECK(row.beta == 50.0);
  CHECK(row.file_bytes == bytes.size());
  CHECK(row.bpp == BitsPerPixel(bytes.size(), row.width, row.height));
  CHECK(row.qy == DecodeJfif(bytes).coefficients.luma_q.ToString());
  CHECK(row.iterations >= 1);

  // metrics on the same pair agrees with the manifest.
  const Outcome m = Run({"metrics", in, jpg});
  REQUIRE(m.code == kExitOk);
  CHECK(std::stod(Field(m.out, "psnr_db")) == row.psnr);
  CHECK(std::stod(Field(m.out, "bpp")) == row.bpp);
  CHECK(std::stoull(Field(m.out, "file_bytes")) == row.file_bytes);

  // Same inputs, same bytes.
  const std::string again = dir / "again.jpg";
  REQUIRE(Run({"compress", "--lambda", "1e12", "--beta", "50", "--sensitivity", kSample, "--out",
               again, in})
              .code == kExitOk);
  CHECK(ReadFileBytes(again) == bytes);
}

TEST_CASE("lambda 0 and baseline modes") {
  TempDir dir("modes");
  const std::string in = dir / "small.ppm";
  WriteImage(Crop(ReadLosslessImage(testing::CorpusImages()[2]), 80, 64), in);
  REQUIRE(Run({"compress", "--lambda", "0", "--beta", "20", "--out", dir / "sdq.jpg", "--manifest",
               dir / "m.csv", in})
              .code == kExitOk);
  REQUIRE(Run({"compress", "--baseline", "--quality", "75", "--out", dir / "base.jpg",
               "--manifest", dir / "m.csv", in})
              .code == kExitOk);
  std::ifstream f(dir / "m.csv");
  std::stringstream ss;
  ss << f.rdbuf();
  const auto rows = ParseManifest(ss.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].kind == "hmosdq");
  CHECK(rows[1].kind == "baseline");
  CHECK(rows[1].qy == AnnexKLumaTable(75).ToString());
  CHECK(testing::DecodeWithLibjpeg(ReadFileBytes(dir / "base.jpg")).ok);
}

TEST_CASE("error classes map to distinct exit codes without partial output") {
  TempDir dir("errors");
  const std::string in = dir / "img.png";
  WriteImage(Crop(ReadLosslessImage(testing::CorpusImages()[1]), 240, 240), in);
  const size_t before = dir.count();

  Outcome r = Run({"compress", "--lambda", "1e12", "--beta", "5", "--sensitivity",
                   dir / "nope.json", "--manifest", dir / "m.csv", in});
  CHECK(r.code == kExitIo);
  CHECK(dir.count() == before);

  std::ofstream(dir / "bad.json") << R"({"model": "x", "n_samples": 1, "resolution": 224,
      "channels": {"Y": [1, 2]}})";
  r = Run({"compress", "--lambda", "1e12", "--beta", "5", "--sensitivity", dir / "bad.json", in});
  CHECK(r.code == kExitSchema);
  CHECK_FALSE(fs::exists(dir / "img.jpg"));

  std::ofstream(dir / "pic.gif") << "GIF89a not really";
  r = Run({"compress", "--beta", "5", dir / "pic.gif"});
  CHECK(r.code == kExitUnsupportedFormat);
  CHECK_FALSE(fs::exists(dir / "pic.jpg"));

  r = Run({"compress", "--lambda", "1e12", "--beta", "5", in});
  CHECK(r.code == kExitInvalidArgument);
  r = Run({"compress", "--beta", "5", dir / "missing.png"});
  CHECK(r.code == kExitIo);
  r = Run({"compress", "--beta", "-1", in});
  CHECK(r.code == kExitUsage);
  r = Run({"frobnicate"});
  CHECK(r.code == kExitUsage);

  // A table at a larger resolution than the image cannot be mapped down.
  const std::string small = dir / "small.png";
  WriteImage(Crop(ReadLosslessImage(in), 100, 90), small);
  r = Run({"compress", "--lambda", "1e12", "--beta", "5", "--sensitivity", kSample, small});
  CHECK(r.code == kExitInvalidArgument);
  CHECK_FALSE(fs::exists(dir / "small.jpg"));
  r = Run({"compress", "--lambda", "1e12", "--beta", "5", "--sensitivity", kSample, "--no-asm",
           "--max-iters", "2", small});
  CHECK(r.code == kExitOk);

  std::ofstream(dir / "junk.jpg") << "\xFF\xD8\xFF\xDB garbage";
  CHECK(Run({"decompress", dir / "junk.jpg"}).code == kExitDecode);
  CHECK(Run({"decompress", in}).code == kExitUnsupportedFormat);
  CHECK(Run({"metrics", in, small}).code == kExitInvalidArgument);
}

TEST_CASE("decompress reproduces the library decoder") {
  TempDir dir("decompress");
  const RgbImage img = Crop(ReadLosslessImage(testing::CorpusImages()[3]), 50, 40);
  const EncodedJpeg j = EncodeBaseline(img, 80, Subsampling::k420, true);
  WriteFileAtomic(dir / "a.jpg", j.bytes);
  REQUIRE(Run({"decompress", dir / "a.jpg"}).code == kExitOk);
  CHECK(ReadLosslessImage(dir / "a.png") == DecodeJfif(j.bytes).image);
  REQUIRE(Run({"decompress", dir / "a.jpg", "--out", dir / "b.ppm"}).code == kExitOk);
  CHECK(DetectFormat(ReadFileBytes(dir / "b.ppm")) == ImageFormat::kPpm);
}

TEST_CASE("metrics of a lossless file against itself hits the cap") {
  const std::string in = testing::CorpusImages()[4];
  const Outcome r = Run({"metrics", in, in});
  REQUIRE(r.code == kExitOk);
  CHECK(std::stod(Field(r.out, "psnr_db")) == kPsnrCap);
  const RgbImage img = ReadLosslessImage(in);
  const double bytes = double(fs::file_size(in));
  CHECK(std::stod(Field(r.out, "bpp")) == bytes * 8 / (img.width() * img.height()));
}

TEST_CASE("asm command") {
  TempDir dir("asm");
  REQUIRE(Run({"asm", "--m", "224", "--sensitivity", kSample, "--out", dir / "same.json"}).code ==
          kExitOk);
  CHECK(LoadSensitivity(dir / "same.json") == LoadSensitivity(kSample));

  REQUIRE(Run({"asm", "--m", "448", "--n", "224", "--sensitivity", kSample, "--out",
               dir / "x2.json"})
              .code == kExitOk);
  REQUIRE(Run({"asm", "--m", "896", "--sensitivity", dir / "x2.json", "--out",
               dir / "chained.json"})
              .code == kExitOk);
  REQUIRE(Run({"asm", "--m", "896", "--sensitivity", kSample, "--out", dir / "direct.json"})
              .code == kExitOk);
  const SensitivityTable chained = LoadSensitivity(dir / "chained.json");
  const SensitivityTable direct = LoadSensitivity(dir / "direct.json");
  CHECK(chained.resolution == 896);
  CHECK(direct.resolution == 896);
  CHECK(chained.channels != direct.channels);
  MESSAGE("Y[0] direct " << direct.channels[0][0] << " chained " << chained.channels[0][0]);

  CHECK(Run({"asm", "--m", "100", "--sensitivity", kSample, "--out", dir / "down.json"}).code ==
        kExitInvalidArgument);
  CHECK_FALSE(fs::exists(dir / "down.json"));
  CHECK(Run({"asm", "--m", "448", "--n", "300", "--sensitivity", kSample, "--out",
             dir / "n.json"})
            .code == kExitInvalidArgument);
}

TEST_CASE("beta sweep over a directory") {
  TempDir src("sweep_src");
  TempDir out("sweep_out");
  const auto corpus = testing::CorpusImages();
  for (int i = 0; i < 10; ++i) {
    WriteImage(Crop(ReadLosslessImage(corpus[i]), 64, 48), src / ("im" + std::to_string(i) + ".png"));
  }
  std::ofstream(src / "notes.txt") << "not an image";
  const Outcome r = Run({"sweep", "--beta-range", "4:400:5", "--max-iters", "4", "--out",
                         out.str(), "--manifest", out / "sweep.csv", src.str()});
  INFO(r.err);
  REQUIRE(r.code == kExitOk);
  std::ifstream f(out / "sweep.csv");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const auto rows = ParseManifest(text);
  REQUIRE(rows.size() == 55);
  int per_image = 0;
  double prev_beta = 0.0, prev_agg = INFINITY;
  for (const ManifestRow& row : rows) {
    if (row.kind == "hmosdq") {
      ++per_image;
      CHECK(row.beta >= prev_beta);
      prev_beta = row.beta;
      CHECK(fs::file_size(row.output) == row.file_bytes);
    } else {
      CHECK(row.kind == "aggregate");
      CHECK(row.images == 10);
      CHECK(row.bpp < prev_agg);
      prev_agg = row.bpp;
    }
  }
  CHECK(per_image == 50);
  CHECK(text.find("# mean bpp strictly decreasing in beta: yes") != std::string::npos);
  // Lossless re-parse: formatting the parsed rows gives the same rows back.
  CHECK(ParseManifest(FormatManifest(rows)) == rows);

  TempDir empty("sweep_empty");
  CHECK(Run({"sweep", "--beta", "5", empty.str()}).code == kExitInvalidArgument);
}

TEST_CASE("beta range parsing") {
  const auto v = ParseBetaRange("1:100:3");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(10.0));
  CHECK(v[2] == 100.0);
  CHECK(ParseBetaRange("7:7:1") == std::vector<double>{7.0});
  CHECK_THROWS(ParseBetaRange("0:1:3"));
  CHECK_THROWS(ParseBetaRange("1:2"));
  CHECK_THROWS(ParseBetaRange("2:1:3"));
  CHECK_THROWS(ParseBetaRange("1:2:x"));
}

TEST_CASE("manifest format details") {
  ManifestRow row;
  row.kind = "hmosdq";
  row.input = "dir with, comma/\"q\".png";
  row.output = "o.jpg";
  row.lambda = 1e12;
  row.beta = 0.1 + 0.2;
  row.bpp = 1.0 / 3.0;
  row.qy = "1 2 3";
  const std::string text = FormatManifest({row}, {"hello"});
  CHECK(text.rfind(std::string(kManifestVersionLine) + "\n", 0) == 0);
  const auto back = ParseManifest(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == row);
  CHECK_THROWS(ParseManifest("kind,input\n"));
  CHECK_THROWS(ParseManifest(std::string(kManifestVersionLine) + "\nwrong,header\n"));
}

}  // namespace
}  // namespace hmojpeg
