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

#ifndef HMOJPEG_HUFFMAN_H_
#define HMOJPEG_HUFFMAN_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

// Unconstrained Huffman code lengths for positive |weights| (zero weights
// get length 0). A lone symbol gets length 1.
std::vector<int> HuffmanCodeLengths(std::span<const double> weights);

// JPEG-legal table for symbols 0..weights.size()-1 with nonzero weight:
// lengths capped at 16 with the Annex K.3 BITS adjustment and the all-ones
// codeword reserved. Throws InvalidArgument for more than 256 symbols or no
// nonzero weight.
HuffmanSpec BuildHuffman(std::span<const double> weights);
HuffmanSpec BuildHuffman(const SymbolCounts& counts);
// From the distribution's counts when it has any, else its masses.
HuffmanSpec BuildHuffman(const RlsDistribution& dist);

// Annex K.3 example tables.
const HuffmanSpec& StandardDcLuma();
const HuffmanSpec& StandardAcLuma();
const HuffmanSpec& StandardDcChroma();
const HuffmanSpec& StandardAcChroma();

// Per-symbol code words for encoding (Annex C).
class HuffmanEncoder {
 public:
  explicit HuffmanEncoder(const HuffmanSpec& spec);

  bool has_code(uint8_t symbol) const { return length_[symbol] != 0; }
  uint16_t code(uint8_t symbol) const { return code_[symbol]; }
  int length(uint8_t symbol) const { return length_[symbol]; }

 private:
  std::array<uint16_t, 256> code_{};
  std::array<uint8_t, 256> length_{};
};

}  // namespace hmojpeg

#endif  // HMOJPEG_HUFFMAN_H_
