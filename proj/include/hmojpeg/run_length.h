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

#ifndef HMOJPEG_RUN_LENGTH_H_
#define HMOJPEG_RUN_LENGTH_H_

#include <span>
#include <vector>

#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

// AC run-length symbols of |indices| positions 1..63, with ZRL for runs of
// 16 and a trailing EOB unless position 63 is nonzero.
std::vector<RunLengthSymbol> AcRunLengths(const IndexBlock& indices);

// Full block coding with the DC difference against |prev_dc|.
RunLengthSequence BuildRunLengths(const IndexBlock& indices, int prev_dc);

// Inverse of BuildRunLengths. Throws InvalidArgument on a sequence that
// does not describe exactly one block.
IndexBlock DecodeRunLengths(const RunLengthSequence& seq, int prev_dc);

// Adds every AC symbol of |ac| to |counts|.
void CountAcSymbols(std::span<const RunLengthSymbol> ac, SymbolCounts& counts);

}  // namespace hmojpeg

#endif  // HMOJPEG_RUN_LENGTH_H_
