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


#ifndef HMOJPEG_PARALLEL_H_
#define HMOJPEG_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace hmojpeg {

// |requested| > 0 wins; otherwise the hardware thread count. Either way the
// result is capped by HMOJPEG_THREADS when that is set to a positive integer.
int ResolveThreadCount(int requested);

// Calls fn(begin, end) over contiguous chunks of [0, n) on up to |threads|
// threads and waits for all of them. Chunk boundaries depend only on n and
// the thread count. The first exception thrown by a worker is rethrown.
void ParallelFor(size_t n, int threads,
                 const std::function<void(size_t, size_t)>& fn);

}  // namespace hmojpeg

#endif  // HMOJPEG_PARALLEL_H_
