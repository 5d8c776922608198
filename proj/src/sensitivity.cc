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

#include "hmojpeg/sensitivity.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "hmojpeg/dct.h"
#include "hmojpeg/error.h"
#include "json.hpp"

namespace hmojpeg {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kChannelKeys[kNumChannels] = {"Y", "Cb", "Cr"};

const Json& Require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw SchemaError(SchemaErrorKind::kMissingField,
                      std::string("sensitivity file lacks field '") + key + "'");
  }
  return *it;
}

// Spatial 8x8 block (row major) -> K x K with the block centered, zeros
// elsewhere, then bilinear back to 8x8.
SpatialBlock PadAndResize(const SpatialBlock& block, int k) {
  std::vector<double> padded(size_t(k) * k, 0.0);
  const int off = (k - 8) / 2;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      padded[size_t(y + off) * k + (x + off)] = block[y * 8 + x];
    }
  }
  // PyTorch upsample_bilinear2d, align_corners=False.
  const double scale = double(k) / 8.0;
  int i0[8];
  int i1[8];
  double frac[8];
  for (int d = 0; d < 8; ++d) {
    double src = (d + 0.5) * scale - 0.5;
    if (src < 0.0) src = 0.0;
    i0[d] = static_cast<int>(src);
    i1[d] = i0[d] < k - 1 ? i0[d] + 1 : i0[d];
    frac[d] = src - i0[d];
  }
  SpatialBlock out{};
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      auto at = [&](int yy, int xx) { return padded[size_t(yy) * k + xx]; };
      const double top =
          (1.0 - frac[x]) * at(i0[y], i0[x]) + frac[x] * at(i0[y], i1[x]);
      const double bottom =
          (1.0 - frac[x]) * at(i1[y], i0[x]) + frac[x] * at(i1[y], i1[x]);
      out[y * 8 + x] = (1.0 - frac[y]) * top + frac[y] * bottom;
    }
  }
  return out;
}

}  // namespace

SensitivityTable SensitivityTable::Zero(int resolution) {
  SensitivityTable t;
  t.model = "none";
  t.resolution = resolution;
  return t;
}

void SensitivityTable::Validate() const {
  for (int c = 0; c < kNumChannels; ++c) {
    for (double v : channels[c]) {
      if (!std::isfinite(v)) {
        throw SchemaError(SchemaErrorKind::kNonFinite,
                          std::string("non-finite sensitivity in channel ") +
                              kChannelKeys[c]);
      }
      if (v < 0.0) {
        throw SchemaError(SchemaErrorKind::kNegativeValue,
                          std::string("negative sensitivity in channel ") +
                              kChannelKeys[c]);
      }
    }
  }
}

SensitivityTable ParseSensitivity(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(SchemaErrorKind::kParse,
                      std::string("sensitivity file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw SchemaError(SchemaErrorKind::kWrongType, "sensitivity file must be a JSON object");
  }
  SensitivityTable t;
  const Json& model = Require(doc, "model");
  const Json& n_samples = Require(doc, "n_samples");
  const Json& resolution = Require(doc, "resolution");
  const Json& channels = Require(doc, "channels");
  if (!model.is_string()) {
    throw SchemaError(SchemaErrorKind::kWrongType, "'model' must be a string");
  }
  if (!n_samples.is_number_integer() || n_samples.get<long long>() < 0) {
    throw SchemaError(SchemaErrorKind::kWrongType, "'n_samples' must be a nonnegative integer");
  }
  if (!resolution.is_number_integer() || resolution.get<long long>() < 8 ||
      resolution.get<long long>() > 65535) {
    throw SchemaError(SchemaErrorKind::kWrongType, "'resolution' must be an integer in [8, 65535]");
  }
  if (!channels.is_object()) {
    throw SchemaError(SchemaErrorKind::kWrongType, "'channels' must be an object");
  }
  t.model = model.get<std::string>();
  t.n_samples = n_samples.get<long long>();
  t.resolution = resolution.get<int>();

  if (channels.size() != kNumChannels) {
    throw SchemaError(SchemaErrorKind::kChannelCount,
                      "'channels' must hold exactly Y, Cb and Cr, found " +
                          std::to_string(channels.size()) + " entries");
  }
  for (int c = 0; c < kNumChannels; ++c) {
    auto it = channels.find(kChannelKeys[c]);
    if (it == channels.end()) {
      throw SchemaError(SchemaErrorKind::kChannelCount,
                        std::string("'channels' lacks channel ") + kChannelKeys[c]);
    }
    if (!it->is_array()) {
      throw SchemaError(SchemaErrorKind::kWrongType,
                        std::string("channel ") + kChannelKeys[c] + " must be an array");
    }
    if (it->size() != kDctBlockSize) {
      throw SchemaError(SchemaErrorKind::kChannelLength,
                        std::string("channel ") + kChannelKeys[c] + " has " +
                            std::to_string(it->size()) + " values, expected 64");
    }
    for (int k = 0; k < kDctBlockSize; ++k) {
      const Json& v = (*it)[k];
      if (!v.is_number()) {
        throw SchemaError(SchemaErrorKind::kWrongType,
                          std::string("channel ") + kChannelKeys[c] + " holds a non-number");
      }
      t.channels[c][k] = v.get<double>();
    }
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key != "model" && key != "n_samples" && key != "resolution" && key != "channels") {
      t.extra[key] = it.value().dump();
    }
  }
  t.Validate();
  return t;
}

std::string SerializeSensitivity(const SensitivityTable& table) {
  table.Validate();
  Json doc;
  doc["model"] = table.model;
  doc["n_samples"] = table.n_samples;
  doc["resolution"] = table.resolution;
  Json channels = Json::object();
  for (int c = 0; c < kNumChannels; ++c) {
    channels[kChannelKeys[c]] = table.channels[c];
  }
  doc["channels"] = std::move(channels);
  for (const auto& [key, value] : table.extra) doc[key] = Json::parse(value);
  return doc.dump(2) + "\n";
}

SensitivityTable LoadSensitivity(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open sensitivity file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ParseSensitivity(ss.str());
}

void SaveSensitivity(const SensitivityTable& table, const std::string& path) {
  const std::string text = SerializeSensitivity(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("error writing " + path);
}

int AsmTargetBlockSize(int orig_short_side, int input_short_side) {
  if (input_short_side <= 0) throw InvalidArgument("input short side must be positive");
  const long long num = 8LL * orig_short_side;
  const long long den = input_short_side;
  long long q = num / den;
  const long long twice_rem = 2 * (num % den);
  if (twice_rem > den || (twice_rem == den && (q & 1))) ++q;
  return static_cast<int>(q);
}

FrequencyVector AsmPipeline(const FrequencyVector& coeffs, int target_block) {
  if (target_block < 8) throw InvalidArgument("ASM target block smaller than 8");
  return FdctBlock(PadAndResize(IdctBlock(coeffs), target_block));
}

AsmJacobian BuildAsmJacobian(int orig_short_side, int input_short_side) {
  if (input_short_side < 8) {
    throw InvalidArgument("input short side must be at least 8");
  }
  if (orig_short_side < input_short_side) {
    throw InvalidArgument("ASM maps to a larger resolution only; got m = " +
                          std::to_string(orig_short_side) + " < n = " +
                          std::to_string(input_short_side));
  }
  AsmJacobian j;
  j.orig_short_side = orig_short_side;
  j.input_short_side = input_short_side;
  j.target_block = AsmTargetBlockSize(orig_short_side, input_short_side);
  if (j.target_block == 8) {
    // No padding and a unit-scale resize: exactly the identity.
    for (int i = 0; i < kDctBlockSize; ++i) j.jacobian[i][i] = 1.0;
    return j;
  }
  for (int k = 0; k < kDctBlockSize; ++k) {
    FrequencyVector basis{};
    basis[k] = 1.0;
    const FrequencyVector column = AsmPipeline(basis, j.target_block);
    for (int i = 0; i < kDctBlockSize; ++i) j.jacobian[i][k] = column[i];
  }
  return j;
}

SensitivityTable MapSensitivity(const SensitivityTable& table,
                                const AsmJacobian& jacobian) {
  SensitivityTable out = table;
  out.resolution = jacobian.orig_short_side;
  for (int c = 0; c < kNumChannels; ++c) {
    for (int i = 0; i < kDctBlockSize; ++i) {
      double acc = 0.0;
      for (int k = 0; k < kDctBlockSize; ++k) {
        const double jik = jacobian.jacobian[i][k];
        acc += jik * jik * table.channels[c][k];
      }
      out.channels[c][i] = acc;
    }
  }
  return out;
}

}  // namespace hmojpeg
