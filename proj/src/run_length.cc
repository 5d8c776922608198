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

#include "hmojpeg/run_length.h"

#include <cassert>
#include <cstdlib>
#include <string>

#include "hmojpeg/error.h"

namespace hmojpeg {

std::vector<RunLengthSymbol> AcRunLengths(const IndexBlock& indices) {
  std::vector<RunLengthSymbol> out;
  int run = 0;
  for (int k = 1; k < kDctBlockSize; ++k) {
    const int a = indices[k];
    if (a == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      out.push_back({15, 0, 0});
      run -= 16;
    }
    assert(run >= 0 && run <= 15);
    const int s = SizeCategory(a);
    if (s > kMaxAcSizeCategory) {
      throw InvalidArgument("AC index " + std::to_string(a) +
                            " needs size category " + std::to_string(s));
    }
    out.push_back({static_cast<uint8_t>(run), static_cast<uint8_t>(s), a});
    run = 0;
  }
  if (run > 0) out.push_back({0, 0, 0});
  return out;
}

RunLengthSequence BuildRunLengths(const IndexBlock& indices, int prev_dc) {
  RunLengthSequence seq;
  seq.dc_diff = indices[0] - prev_dc;
  seq.dc_size = static_cast<uint8_t>(SizeCategory(seq.dc_diff));
  seq.ac = AcRunLengths(indices);
  return seq;
}

IndexBlock DecodeRunLengths(const RunLengthSequence& seq, int prev_dc) {
  IndexBlock out{};
  if (SizeCategory(seq.dc_diff) != seq.dc_size) {
    throw InvalidArgument("DC size category does not match its difference");
  }
  out[0] = prev_dc + seq.dc_diff;
  int k = 1;
  for (size_t i = 0; i < seq.ac.size(); ++i) {
    const RunLengthSymbol& sym = seq.ac[i];
    if (k >= kDctBlockSize) {
      throw InvalidArgument("run-length symbols past the end of the block");
    }
    if (sym.is_eob()) {
      if (i + 1 != seq.ac.size()) {
        throw InvalidArgument("symbols after EOB");
      }
      return out;
    }
    if (sym.is_zrl()) {
      k += 16;
      continue;
    }
    if (sym.run > 15 || sym.size < 1 || sym.size > kMaxAcSizeCategory ||
        sym.amplitude == 0 || SizeCategory(sym.amplitude) != sym.size) {
      throw InvalidArgument("malformed run-length symbol");
    }
    k += sym.run;
    if (k >= kDctBlockSize) {
      throw InvalidArgument("run-length symbols past the end of the block");
    }
    out[k++] = sym.amplitude;
  }
  if (k != kDctBlockSize) {
    throw InvalidArgument("block ends before position 63 without EOB");
  }
  return out;
}

void CountAcSymbols(std::span<const RunLengthSymbol> ac, SymbolCounts& counts) {
  for (const RunLengthSymbol& sym : ac) ++counts[sym.symbol()];
}

}  // namespace hmojpeg
