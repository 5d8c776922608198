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


#include "hmojpeg/manifest.h"

#include <charconv>
#include <filesystem>
#include <sstream>

#include "hmojpeg/error.h"
#include "hmojpeg/image_io.h"

namespace hmojpeg {

namespace {

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string HeaderLine() {
  std::string out;
  for (const std::string& c : ManifestColumns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

// Splits the whole document into records, honoring quoted newlines.
std::vector<std::vector<std::string>> SplitRecords(const std::string& text,
                                                   std::vector<bool>* is_comment) {
  std::vector<std::vector<std::string>> records;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    if (text[i] == '\n' || text[i] == '\r') {
      ++i;
      continue;
    }
    if (text[i] == '#') {
      const size_t end = text.find('\n', i);
      std::string line = text.substr(i, end == std::string::npos ? end : end - i);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      records.push_back({line});
      is_comment->push_back(true);
      i = end == std::string::npos ? n : end + 1;
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (;;) {
      if (i >= n) {
        if (quoted) throw SchemaError(SchemaErrorKind::kParse, "unterminated quote in manifest");
        fields.push_back(cur);
        break;
      }
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            cur += '"';
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
        } else {
          cur += c;
          ++i;
        }
      } else if (c == '"' && cur.empty()) {
        quoted = true;
        ++i;
      } else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
        ++i;
      } else if (c == '\n' || c == '\r') {
        fields.push_back(cur);
        ++i;
        if (c == '\r' && i < n && text[i] == '\n') ++i;
        break;
      } else {
        cur += c;
        ++i;
      }
    }
    records.push_back(std::move(fields));
    is_comment->push_back(false);
  }
  return records;
}

template <typename T>
T ParseNumber(const std::string& s, const char* column) {
  T v{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw SchemaError(SchemaErrorKind::kWrongType,
                      std::string("manifest column ") + column + " holds '" + s + "'");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& ManifestColumns() {
  static const std::vector<std::string> kColumns = {
      "kind",       "input", "output", "width",      "height", "subsample",
      "lambda",     "beta",  "quality", "sensitivity", "file_bytes", "bpp",
      "psnr",       "iterations", "images", "qy", "qc"};
  return kColumns;
}

std::string FormatReal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatManifestRow(const ManifestRow& r) {
  const std::vector<std::string> fields = {
      r.kind,
      r.input,
      r.output,
      std::to_string(r.width),
      std::to_string(r.height),
      r.subsample,
      FormatReal(r.lambda),
      FormatReal(r.beta),
      std::to_string(r.quality),
      r.sensitivity,
      std::to_string(r.file_bytes),
      FormatReal(r.bpp),
      FormatReal(r.psnr),
      std::to_string(r.iterations),
      std::to_string(r.images),
      r.qy,
      r.qc};
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += Quote(fields[i]);
  }
  return out;
}

std::string FormatManifest(const std::vector<ManifestRow>& rows,
                           const std::vector<std::string>& comments) {
  std::string out = std::string(kManifestVersionLine) + "\n" + HeaderLine() + "\n";
  for (const ManifestRow& r : rows) out += FormatManifestRow(r) + "\n";
  for (const std::string& c : comments) out += "# " + c + "\n";
  return out;
}

std::vector<ManifestRow> ParseManifest(const std::string& text) {
  std::vector<bool> comment;
  const auto records = SplitRecords(text, &comment);
  if (records.empty() || !comment[0] || records[0][0] != kManifestVersionLine) {
    throw SchemaError(SchemaErrorKind::kParse, "manifest lacks the version line");
  }
  size_t i = 1;
  while (i < records.size() && comment[i]) ++i;
  if (i == records.size() || records[i] != ManifestColumns()) {
    throw SchemaError(SchemaErrorKind::kMissingField, "manifest column header mismatch");
  }
  std::vector<ManifestRow> rows;
  for (++i; i < records.size(); ++i) {
    if (comment[i]) continue;
    const auto& f = records[i];
    if (f.size() != ManifestColumns().size()) {
      throw SchemaError(SchemaErrorKind::kChannelLength,
                        "manifest row has " + std::to_string(f.size()) + " fields, expected " +
                            std::to_string(ManifestColumns().size()));
    }
    ManifestRow r;
    r.kind = f[0];
    r.input = f[1];
    r.output = f[2];
    r.width = ParseNumber<int>(f[3], "width");
    r.height = ParseNumber<int>(f[4], "height");
    r.subsample = f[5];
    r.lambda = ParseNumber<double>(f[6], "lambda");
    r.beta = ParseNumber<double>(f[7], "beta");
    r.quality = ParseNumber<int>(f[8], "quality");
    r.sensitivity = f[9];
    r.file_bytes = ParseNumber<uint64_t>(f[10], "file_bytes");
    r.bpp = ParseNumber<double>(f[11], "bpp");
    r.psnr = ParseNumber<double>(f[12], "psnr");
    r.iterations = ParseNumber<int>(f[13], "iterations");
    r.images = ParseNumber<int>(f[14], "images");
    r.qy = f[15];
    r.qc = f[16];
    rows.push_back(std::move(r));
  }
  return rows;
}

void AppendManifest(const std::string& path, const std::vector<ManifestRow>& rows,
                    const std::vector<std::string>& comments) {
  std::string text;
  if (std::filesystem::exists(path)) {
    const std::vector<uint8_t> bytes = ReadFileBytes(path);
    text.assign(bytes.begin(), bytes.end());
    ParseManifest(text);
    if (!text.empty() && text.back() != '\n') text += '\n';
    for (const ManifestRow& r : rows) text += FormatManifestRow(r) + "\n";
    for (const std::string& c : comments) text += "# " + c + "\n";
  } else {
    text = FormatManifest(rows, comments);
  }
  WriteTextAtomic(path, text);
}

}  // namespace hmojpeg
