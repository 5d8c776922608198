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
// Image and file input/output: PNG, binary PPM/PGM and uncompressed BMP in,
// PNG and PPM out, plus JPEG through the library's own decoder.

#ifndef HMOJPEG_IMAGE_IO_H_
#define HMOJPEG_IMAGE_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

enum class ImageFormat { kUnknown, kPng, kPpm, kBmp, kJpeg };

// Sniffs the leading magic bytes.
ImageFormat DetectFormat(std::span<const uint8_t> bytes);
const char* FormatName(ImageFormat format);

// Lossless formats only. Throws UnsupportedFormat for anything else
// (JPEG included) and IoError for malformed content.
RgbImage DecodeLosslessImage(std::span<const uint8_t> bytes);
// Lossless formats or JPEG.
RgbImage DecodeAnyImage(std::span<const uint8_t> bytes);

RgbImage DecodePng(std::span<const uint8_t> bytes);
RgbImage DecodePnm(std::span<const uint8_t> bytes);
RgbImage DecodeBmp(std::span<const uint8_t> bytes);
std::vector<uint8_t> EncodePng(const RgbImage& image);
std::vector<uint8_t> EncodePpm(const RgbImage& image);

std::vector<uint8_t> ReadFileBytes(const std::string& path);
// Writes to a sibling temporary file and renames it over |path|, so a failed
// write never leaves a partial file behind.
void WriteFileAtomic(const std::string& path, std::span<const uint8_t> bytes);
void WriteTextAtomic(const std::string& path, const std::string& text);

RgbImage ReadLosslessImage(const std::string& path);
RgbImage ReadAnyImage(const std::string& path);
// PNG unless the extension is .ppm.
void WriteImage(const RgbImage& image, const std::string& path);

}  // namespace hmojpeg

#endif  // HMOJPEG_IMAGE_IO_H_
