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
// CSV run manifest. The first line is the version comment
// "# hmojpeg-manifest v1", the second the column header. Other lines that
// start with '#' are comments. Reals are written in shortest round-trip
// form, so a parse of a written manifest reproduces every field exactly.

#ifndef HMOJPEG_MANIFEST_H_
#define HMOJPEG_MANIFEST_H_

#include <cstdint>
#include <string>
#include <vector>

namespace hmojpeg {

inline constexpr const char* kManifestVersionLine = "# hmojpeg-manifest v1";

struct ManifestRow {
  // "hmosdq", "baseline" or "aggregate".
  std::string kind;
  std::string input;
  std::string output;
  int width = 0;
  int height = 0;
  std::string subsample;
  double lambda = 0.0;
  double beta = 0.0;
  int quality = 0;
  std::string sensitivity;
  uint64_t file_bytes = 0;
  double bpp = 0.0;
  double psnr = 0.0;
  int iterations = 0;
  // Images summarized by the row: 1, or the group size for aggregates.
  int images = 1;
  // Final tables, 64 space-separated zigzag steps.
  std::string qy;
  std::string qc;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

const std::vector<std::string>& ManifestColumns();

// Header lines plus rows, plus optional trailing comment lines.
std::string FormatManifest(const std::vector<ManifestRow>& rows,
                           const std::vector<std::string>& comments = {});
std::string FormatManifestRow(const ManifestRow& row);

// Throws SchemaError on a missing/unknown version line, a header that does
// not match, or a malformed row.
std::vector<ManifestRow> ParseManifest(const std::string& text);

// Creates the file with a header, or appends to a manifest that parses.
// The file is replaced atomically.
void AppendManifest(const std::string& path,
                    const std::vector<ManifestRow>& rows,
                    const std::vector<std::string>& comments = {});

std::string FormatReal(double v);

}  // namespace hmojpeg

#endif  // HMOJPEG_MANIFEST_H_
