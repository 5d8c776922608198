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
// Soft decision quantization. Each AC index sequence is chosen by a trellis
// search minimizing HMOE + beta * rate, where the rate of a run-length
// symbol (r,s) is -log2 P(r,s) plus its s amplitude bits. Between trellis
// passes the quantization table and P are refit to the chosen indices.
// DC indices are always hard decisions.

#ifndef HMOJPEG_SDQ_H_
#define HMOJPEG_SDQ_H_

#include <span>
#include <vector>

#include "hmojpeg/hmoe.h"
#include "hmojpeg/jpeg_model.h"

namespace hmojpeg {

struct OptimizerConfig {
  double beta = 1.0;
  double lambda = 0.0;
  int max_iters = 20;
  double epsilon = 1e-4;
  // Amplitude candidates are hard index +- radius, never 0.
  int radius = 1;
  // Annex K quality of the initial tables.
  int quality = 75;
  // 0 picks the hardware thread count (see ResolveThreadCount).
  int threads = 0;

  // Throws InvalidArgument when a field is out of range.
  void Validate() const;
};

struct TrellisResult {
  // AC positions hold the chosen indices; position 0 is left at 0.
  IndexBlock indices{};
  double cost = 0.0;
  int nonzeros = 0;
};

// Trellis over positions 1..n-1 of the given arrays (position 0 is the DC
// slot and is ignored), 2 <= n <= 64. The state is the position of the last
// nonzero index. Transition p -> k codes k-p-1 zeros (ZRLs as needed) and a
// nonzero amplitude at k; EOB is allowed from any state but the last
// position. Equal costs go to fewer nonzeros, then smaller sum |a|.
TrellisResult TrellisSearch(std::span<const double> x, std::span<const int> steps,
                            std::span<const double> w,
                            const RlsDistribution& dist, double beta,
                            int radius);

TrellisResult TrellisBlock(const DctBlock& x, const QuantTable& q,
                           const WeightVector& w, const RlsDistribution& dist,
                           double beta, int radius);

// Cost the trellis assigns to the AC part of |indices| (positions 1..n-1),
// accumulated in the same order the trellis uses.
double AcPathCost(std::span<const double> x, std::span<const int> indices,
                  std::span<const int> steps, std::span<const double> w,
                  const RlsDistribution& dist, double beta);

// Hard decisions with |q|, AC indices clamped to the representable range.
IndexBlock InitialIndices(const DctBlock& x, const QuantTable& q);

// AC run-length symbol counts of a set of index blocks.
SymbolCounts CountSymbols(std::span<const std::vector<IndexBlock>* const> planes);

// Smoothed distribution of the hard-decision run-length symbols of |planes|
// quantized with |q0|.
RlsDistribution InitDistribution(std::span<const DctPlane* const> planes,
                                 const QuantTable& q0);
RlsDistribution InitDistribution(const DctPlane& plane, const QuantTable& q0);

// Smoothed distribution of the run-length symbols of |planes|.
RlsDistribution UpdateDistribution(
    std::span<const std::vector<IndexBlock>* const> planes);

// Integer step in [1, 255] minimizing sum_j w_j (x_j - I_j q)^2;
// |current| when every I_j is 0. Exact ties go to the larger step.
int UpdateStep(std::span<const double> x, std::span<const int> indices,
               std::span<const double> w, int current);

struct ChannelState {
  const DctPlane* plane = nullptr;
  const std::vector<IndexBlock>* indices = nullptr;
  const WeightVector* weights = nullptr;
};

// UpdateStep applied at every frequency (DC included) over all channels.
QuantTable UpdateQ(std::span<const ChannelState> channels,
                   const QuantTable& current);

struct IterationRecord {
  double cost_after_trellis = 0.0;
  double cost_after_update = 0.0;
  double hmoe = 0.0;
  // Model rate of the AC symbols, amplitude bits included.
  double ideal_bits = 0.0;
  QuantTable q;
  // Blocks whose previous indices beat the trellis under the current model.
  size_t kept_blocks = 0;
  // Whether the refit distribution was rejected in favor of the old one.
  bool kept_distribution = false;
};

struct IterationTrace {
  QuantTable q0;
  double initial_cost = 0.0;
  std::vector<IterationRecord> iterations;
  bool converged = false;

  // initial, then (after trellis, after update) per iteration.
  std::vector<double> CostSequence() const;
  bool IsNonincreasing(double relative_slack) const;
  double final_cost() const;
};

struct OptimizationResult {
  // One list of raster-ordered blocks per optimized channel.
  std::vector<std::vector<IndexBlock>> indices;
  QuantTable q;
  RlsDistribution dist;
  IterationTrace trace;
};

OptimizationResult OptimizeLuma(const DctPlane& plane, const QuantTable& q0,
                                const WeightVector& w,
                                const OptimizerConfig& cfg);

// Cb and Cr share one table and one distribution. Throws InvalidArgument
// when the planes differ in block count.
OptimizationResult OptimizeChromaJoint(const DctPlane& cb, const DctPlane& cr,
                                       const QuantTable& q0,
                                       const WeightVector& w_cb,
                                       const WeightVector& w_cr,
                                       const OptimizerConfig& cfg);

}  // namespace hmojpeg

#endif  // HMOJPEG_SDQ_H_
