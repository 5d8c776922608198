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


#include "hmojpeg/image_io.h"

#include <png.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "hmojpeg/error.h"
#include "hmojpeg/jfif.h"

namespace hmojpeg {

namespace {

constexpr uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

class PnmCursor {
 public:
  explicit PnmCursor(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const uint8_t c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                 c == '\v' || c == '\f') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  int ReadInt() {
    SkipSpaceAndComments();
    long v = 0;
    size_t digits = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1 << 24) throw IoError("PNM header value too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw IoError("malformed PNM header");
    return static_cast<int>(v);
  }

  size_t pos() const { return pos_; }
  void Advance() { ++pos_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

uint32_t Le32(std::span<const uint8_t> b, size_t at) {
  return uint32_t(b[at]) | uint32_t(b[at + 1]) << 8 | uint32_t(b[at + 2]) << 16 |
         uint32_t(b[at + 3]) << 24;
}
uint16_t Le16(std::span<const uint8_t> b, size_t at) {
  return uint16_t(b[at] | b[at + 1] << 8);
}

std::string Lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

ImageFormat DetectFormat(std::span<const uint8_t> b) {
  if (b.size() >= 8 && std::memcmp(b.data(), kPngMagic, 8) == 0) return ImageFormat::kPng;
  if (b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF) return ImageFormat::kJpeg;
  if (b.size() >= 2 && b[0] == 'P' && (b[1] == '5' || b[1] == '6')) return ImageFormat::kPpm;
  if (b.size() >= 2 && b[0] == 'B' && b[1] == 'M') return ImageFormat::kBmp;
  return ImageFormat::kUnknown;
}

const char* FormatName(ImageFormat format) {
  switch (format) {
    case ImageFormat::kPng: return "PNG";
    case ImageFormat::kPpm: return "PPM";
    case ImageFormat::kBmp: return "BMP";
    case ImageFormat::kJpeg: return "JPEG";
    case ImageFormat::kUnknown: break;
  }
  return "unknown";
}

RgbImage DecodePng(std::span<const uint8_t> bytes) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    throw IoError(std::string("PNG: ") + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  if (img.width < 1 || img.height < 1 || img.width > 65535 || img.height > 65535) {
    png_image_free(&img);
    throw UnsupportedFormat("PNG dimensions outside [1, 65535]");
  }
  std::vector<uint8_t> samples(PNG_IMAGE_SIZE(img));
  // Alpha, if any, is composited over black.
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&img, &background, samples.data(), 0, nullptr)) {
    throw IoError(std::string("PNG: ") + img.message);
  }
  return RgbImage(static_cast<int>(img.width), static_cast<int>(img.height),
                  std::move(samples));
}

RgbImage DecodePnm(std::span<const uint8_t> bytes) {
  if (DetectFormat(bytes) != ImageFormat::kPpm) throw UnsupportedFormat("not a binary PNM");
  const bool color = bytes[1] == '6';
  PnmCursor cur(bytes);
  cur.Advance();
  cur.Advance();
  const int width = cur.ReadInt();
  const int height = cur.ReadInt();
  const int maxval = cur.ReadInt();
  if (width < 1 || height < 1) throw IoError("PNM dimensions must be positive");
  if (maxval < 1 || maxval > 255) throw UnsupportedFormat("PNM maxval must be in [1, 255]");
  if (cur.pos() >= bytes.size()) throw IoError("truncated PNM");
  cur.Advance();  // single whitespace before the raster
  const size_t channels = color ? 3 : 1;
  const size_t need = size_t(width) * height * channels;
  if (bytes.size() - cur.pos() < need) throw IoError("truncated PNM raster");
  std::vector<uint8_t> samples(size_t(width) * height * 3);
  const uint8_t* src = bytes.data() + cur.pos();
  for (size_t i = 0; i < size_t(width) * height; ++i) {
    for (size_t c = 0; c < 3; ++c) {
      int v = src[i * channels + (color ? c : 0)];
      if (v > maxval) throw IoError("PNM sample exceeds maxval");
      if (maxval != 255) v = (v * 255 + maxval / 2) / maxval;
      samples[i * 3 + c] = static_cast<uint8_t>(v);
    }
  }
  return RgbImage(width, height, std::move(samples));
}

RgbImage DecodeBmp(std::span<const uint8_t> b) {
  if (DetectFormat(b) != ImageFormat::kBmp) throw UnsupportedFormat("not a BMP");
  if (b.size() < 54) throw IoError("truncated BMP header");
  const uint32_t offset = Le32(b, 10);
  const uint32_t dib = Le32(b, 14);
  if (dib < 40) throw UnsupportedFormat("BMP core headers are not supported");
  const int32_t width = static_cast<int32_t>(Le32(b, 18));
  const int32_t raw_height = static_cast<int32_t>(Le32(b, 22));
  const int bpp = Le16(b, 28);
  const uint32_t compression = Le32(b, 30);
  if (compression != 0) throw UnsupportedFormat("compressed BMP is not supported");
  if (bpp != 24 && bpp != 32) throw UnsupportedFormat("BMP must be 24 or 32 bits per pixel");
  if (width < 1 || raw_height == 0 || raw_height == INT32_MIN) {
    throw IoError("bad BMP dimensions");
  }
  const bool top_down = raw_height < 0;
  const int height = top_down ? -raw_height : raw_height;
  if (width > 65535 || height > 65535) throw UnsupportedFormat("BMP too large");
  const size_t stride = (size_t(bpp) * width + 31) / 32 * 4;
  if (offset > b.size() || b.size() - offset < stride * height) {
    throw IoError("truncated BMP raster");
  }
  const size_t px = bpp / 8;
  std::vector<uint8_t> samples(size_t(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    const size_t row = top_down ? y : height - 1 - y;
    const uint8_t* src = b.data() + offset + row * stride;
    for (int x = 0; x < width; ++x) {
      uint8_t* dst = &samples[(size_t(y) * width + x) * 3];
      dst[0] = src[x * px + 2];
      dst[1] = src[x * px + 1];
      dst[2] = src[x * px + 0];
    }
  }
  return RgbImage(width, height, std::move(samples));
}

RgbImage DecodeLosslessImage(std::span<const uint8_t> bytes) {
  switch (DetectFormat(bytes)) {
    case ImageFormat::kPng: return DecodePng(bytes);
    case ImageFormat::kPpm: return DecodePnm(bytes);
    case ImageFormat::kBmp: return DecodeBmp(bytes);
    case ImageFormat::kJpeg:
      throw UnsupportedFormat("JPEG input is lossy; use PNG, PPM or BMP");
    case ImageFormat::kUnknown: break;
  }
  throw UnsupportedFormat("unrecognized image format");
}

RgbImage DecodeAnyImage(std::span<const uint8_t> bytes) {
  if (DetectFormat(bytes) == ImageFormat::kJpeg) return DecodeJfif(bytes).image;
  return DecodeLosslessImage(bytes);
}

std::vector<uint8_t> EncodePng(const RgbImage& image) {
  if (image.empty()) throw InvalidArgument("cannot encode an empty image");
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.samples().data(), 0,
                                 nullptr)) {
    throw IoError(std::string("PNG: ") + img.message);
  }
  std::vector<uint8_t> out(size);
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.samples().data(), 0,
                                 nullptr)) {
    throw IoError(std::string("PNG: ") + img.message);
  }
  out.resize(size);
  return out;
}

std::vector<uint8_t> EncodePpm(const RgbImage& image) {
  if (image.empty()) throw InvalidArgument("cannot encode an empty image");
  const std::string header = "P6\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.samples().begin(), image.samples().end());
  return out;
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path);
  return bytes;
}

void WriteFileAtomic(const std::string& path, std::span<const uint8_t> bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  std::string tmpl = (dir / ("." + target.filename().string() + ".XXXXXX")).string();
  const int fd = mkstemp(tmpl.data());
  if (fd < 0) {
    throw IoError("cannot create a file in " + dir.string() + ": " + std::strerror(errno));
  }
  ::fchmod(fd, 0644);
  size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string why = std::strerror(errno);
      ::close(fd);
      ::unlink(tmpl.c_str());
      throw IoError("error writing " + path + ": " + why);
    }
    done += size_t(n);
  }
  if (::close(fd) != 0 || std::rename(tmpl.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    ::unlink(tmpl.c_str());
    throw IoError("cannot write " + path + ": " + why);
  }
}

void WriteTextAtomic(const std::string& path, const std::string& text) {
  WriteFileAtomic(path, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

RgbImage ReadLosslessImage(const std::string& path) {
  return DecodeLosslessImage(ReadFileBytes(path));
}

RgbImage ReadAnyImage(const std::string& path) {
  return DecodeAnyImage(ReadFileBytes(path));
}

void WriteImage(const RgbImage& image, const std::string& path) {
  const std::string ext = Lowercase(std::filesystem::path(path).extension().string());
  if (ext == ".ppm") {
    WriteFileAtomic(path, EncodePpm(image));
  } else {
    WriteFileAtomic(path, EncodePng(image));
  }
}

}  // namespace hmojpeg
