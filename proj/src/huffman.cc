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

#include "hmojpeg/huffman.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "hmojpeg/error.h"

namespace hmojpeg {

namespace {

HuffmanSpec MakeSpec(std::initializer_list<uint8_t> bits16,
                     std::initializer_list<uint8_t> values) {
  HuffmanSpec spec;
  int i = 1;
  for (uint8_t b : bits16) spec.bits[i++] = b;
  spec.values.assign(values.begin(), values.end());
  spec.Validate();
  return spec;
}

}  // namespace

std::vector<int> HuffmanCodeLengths(std::span<const double> weights) {
  std::vector<int> lengths(weights.size(), 0);
  // Node ids: leaves are symbol indices, internal nodes follow.
  std::vector<int> parent;
  std::vector<int> leaf_of;
  using Item = std::pair<double, int>;  // (weight, node id)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (size_t s = 0; s < weights.size(); ++s) {
    if (weights[s] > 0.0) {
      heap.emplace(weights[s], static_cast<int>(parent.size()));
      parent.push_back(-1);
      leaf_of.push_back(static_cast<int>(s));
    }
  }
  if (leaf_of.size() == 1) {
    lengths[leaf_of[0]] = 1;
    return lengths;
  }
  while (heap.size() > 1) {
    const auto [wa, a] = heap.top();
    heap.pop();
    const auto [wb, b] = heap.top();
    heap.pop();
    const int id = static_cast<int>(parent.size());
    parent.push_back(-1);
    parent[a] = id;
    parent[b] = id;
    heap.emplace(wa + wb, id);
  }
  for (size_t leaf = 0; leaf < leaf_of.size(); ++leaf) {
    int depth = 0;
    for (int n = static_cast<int>(leaf); parent[n] >= 0; n = parent[n]) ++depth;
    lengths[leaf_of[leaf]] = depth;
  }
  return lengths;
}

HuffmanSpec BuildHuffman(std::span<const double> weights) {
  if (weights.size() > 256) {
    throw InvalidArgument("Huffman alphabet larger than 256 symbols");
  }
  // Annex K.2 (libjpeg's jpeg_gen_optimal_table) over real weights. Slot 256
  // is a reserved pseudo-symbol with the smallest weight; it ends up with the
  // all-ones codeword, which is then dropped.
  constexpr int kSlots = 257;
  std::array<double, kSlots> freq{};
  std::array<int, kSlots> codesize{};
  std::array<int, kSlots> others;
  others.fill(-1);
  double min_weight = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < weights.size(); ++s) {
    if (weights[s] < 0.0) throw InvalidArgument("negative Huffman weight");
    freq[s] = weights[s];
    if (weights[s] > 0.0) min_weight = std::min(min_weight, weights[s]);
  }
  if (!std::isfinite(min_weight)) {
    throw InvalidArgument("Huffman table needs at least one symbol");
  }
  freq[256] = min_weight;

  for (;;) {
    // Smallest nonzero weight, ties to the larger index.
    int c1 = -1;
    double v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSlots; ++i) {
      if (freq[i] > 0.0 && freq[i] <= v) {
        v = freq[i];
        c1 = i;
      }
    }
    int c2 = -1;
    v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSlots; ++i) {
      if (freq[i] > 0.0 && freq[i] <= v && i != c1) {
        v = freq[i];
        c2 = i;
      }
    }
    if (c2 < 0) break;
    freq[c1] += freq[c2];
    freq[c2] = 0.0;
    ++codesize[c1];
    while (others[c1] >= 0) {
      c1 = others[c1];
      ++codesize[c1];
    }
    others[c1] = c2;
    ++codesize[c2];
    while (others[c2] >= 0) {
      c2 = others[c2];
      ++codesize[c2];
    }
  }

  std::vector<int> bits(kSlots + 1, 0);
  for (int i = 0; i < kSlots; ++i) {
    if (codesize[i]) ++bits[codesize[i]];
  }
  // Cap lengths at 16 (Annex K.3, Figure K.3).
  for (int i = kSlots; i > 16; --i) {
    while (bits[i] > 0) {
      int j = i - 2;
      while (bits[j] == 0) --j;
      bits[i] -= 2;
      bits[i - 1] += 1;
      bits[j + 1] += 2;
      bits[j] -= 1;
    }
  }
  // Drop the reserved pseudo-symbol from the longest length.
  int longest = 16;
  while (bits[longest] == 0) --longest;
  bits[longest] -= 1;

  HuffmanSpec spec;
  for (int len = 1; len <= 16; ++len) spec.bits[len] = static_cast<uint8_t>(bits[len]);
  // Symbols sorted by (code length, value), as libjpeg does. After the cap
  // the per-symbol sizes are stale, but ordering by them still hands the
  // shortest codes to the heaviest symbols.
  std::vector<std::pair<int, int>> order;
  for (int s = 0; s < 256; ++s) {
    if (codesize[s]) order.emplace_back(codesize[s], s);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [size, sym] : order) {
    spec.values.push_back(static_cast<uint8_t>(sym));
  }
  spec.Validate();
  return spec;
}

HuffmanSpec BuildHuffman(const SymbolCounts& counts) {
  std::array<double, 256> w{};
  for (int s = 0; s < 256; ++s) w[s] = static_cast<double>(counts[s]);
  return BuildHuffman(std::span<const double>(w));
}

HuffmanSpec BuildHuffman(const RlsDistribution& dist) {
  if (dist.total_count() > 0) return BuildHuffman(dist.counts());
  std::array<double, 256> w{};
  for (int s = 0; s < 256; ++s) w[s] = dist.probability(static_cast<uint8_t>(s));
  return BuildHuffman(std::span<const double>(w));
}

const HuffmanSpec& StandardDcLuma() {
  static const HuffmanSpec spec =
      MakeSpec({0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0},
               {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  return spec;
}

const HuffmanSpec& StandardDcChroma() {
  static const HuffmanSpec spec =
      MakeSpec({0, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0},
               {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  return spec;
}

const HuffmanSpec& StandardAcLuma() {
  static const HuffmanSpec spec = MakeSpec(
      {0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7d},
      {0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06,
       0x13, 0x51, 0x61, 0x07, 0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xa1, 0x08,
       0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0, 0x24, 0x33, 0x62, 0x72,
       0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28,
       0x29, 0x2a, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45,
       0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
       0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74, 0x75,
       0x76, 0x77, 0x78, 0x79, 0x7a, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
       0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3,
       0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6,
       0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7, 0xc8, 0xc9,
       0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
       0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4,
       0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa});
  return spec;
}

const HuffmanSpec& StandardAcChroma() {
  static const HuffmanSpec spec = MakeSpec(
      {0, 2, 1, 2, 4, 4, 3, 4, 7, 5, 4, 4, 0, 1, 2, 0x77},
      {0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21, 0x31, 0x06, 0x12, 0x41,
       0x51, 0x07, 0x61, 0x71, 0x13, 0x22, 0x32, 0x81, 0x08, 0x14, 0x42, 0x91,
       0xa1, 0xb1, 0xc1, 0x09, 0x23, 0x33, 0x52, 0xf0, 0x15, 0x62, 0x72, 0xd1,
       0x0a, 0x16, 0x24, 0x34, 0xe1, 0x25, 0xf1, 0x17, 0x18, 0x19, 0x1a, 0x26,
       0x27, 0x28, 0x29, 0x2a, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44,
       0x45, 0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58,
       0x59, 0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74,
       0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x82, 0x83, 0x84, 0x85, 0x86, 0x87,
       0x88, 0x89, 0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a,
       0xa2, 0xa3, 0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4,
       0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7,
       0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda,
       0xe2, 0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf2, 0xf3, 0xf4,
       0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa});
  return spec;
}

HuffmanEncoder::HuffmanEncoder(const HuffmanSpec& spec) {
  spec.Validate();
  uint32_t code = 0;
  size_t k = 0;
  for (int len = 1; len <= 16; ++len) {
    for (int i = 0; i < spec.bits[len]; ++i) {
      const uint8_t sym = spec.values[k++];
      if (length_[sym] != 0) {
        throw InvalidArgument("duplicate symbol in Huffman table");
      }
      code_[sym] = static_cast<uint16_t>(code);
      length_[sym] = static_cast<uint8_t>(len);
      ++code;
    }
    code <<= 1;
  }
}

}  // namespace hmojpeg
