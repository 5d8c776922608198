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


#include "hmojpeg/sdq.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "hmojpeg/dct.h"
#include "hmojpeg/error.h"
#include "hmojpeg/parallel.h"
#include "hmojpeg/run_length.h"

namespace hmojpeg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMinStep = 1;
constexpr int kMaxStep = 255;

// Shared by the trellis and AcPathCost so both add in the same order.
inline double TransitionCost(double zero_dist, double coef_dist, int zrls,
                             double zrl_bits, double symbol_bits, int size,
                             double beta) {
  double rate = zrls * zrl_bits;
  rate += symbol_bits;
  rate += size;
  return (zero_dist + coef_dist) + beta * rate;
}

inline double EobCost(double tail_dist, double eob_bits, double beta) {
  return tail_dist + beta * eob_bits;
}

struct Node {
  double cost = kInf;
  int nonzeros = 0;
  long long abs_sum = 0;
  int prev = -1;
  int amplitude = 0;
  bool reached = false;
};

inline bool Improves(double cost, int nonzeros, long long abs_sum,
                     const Node& cur) {
  if (!cur.reached) return true;
  if (cost != cur.cost) return cost < cur.cost;
  if (nonzeros != cur.nonzeros) return nonzeros < cur.nonzeros;
  return abs_sum < cur.abs_sum;
}

void CheckTrellisArgs(size_t n, size_t steps, size_t w) {
  if (n < 2 || n > size_t(kDctBlockSize)) {
    throw InvalidArgument("trellis length must be in [2, 64]");
  }
  if (steps != n || w != n) {
    throw InvalidArgument("trellis inputs differ in length");
  }
}

int HardAc(double x, int step) {
  const double h = std::round(x / step);
  return static_cast<int>(std::clamp(h, double(-kMaxAcIndex), double(kMaxAcIndex)));
}

double TotalCost(std::span<const ChannelState> channels, const QuantTable& q,
                 const RlsDistribution& dist, double beta, double* hmoe,
                 double* bits) {
  double total = 0.0;
  double d_sum = 0.0;
  for (const ChannelState& ch : channels) {
    const auto& blocks = ch.plane->blocks;
    const auto& idx = *ch.indices;
    const WeightVector& w = *ch.weights;
    for (size_t b = 0; b < blocks.size(); ++b) {
      const double dc = HmoeTerm(blocks[b][0], idx[b][0], q[0], w[0]);
      total += dc + AcPathCost(blocks[b], idx[b], q.steps(), w, dist, beta);
      if (hmoe) d_sum += HmoeBlock(blocks[b], idx[b], q, w);
    }
  }
  if (hmoe) *hmoe = d_sum;
  if (bits) {
    std::vector<const std::vector<IndexBlock>*> planes;
    for (const ChannelState& ch : channels) planes.push_back(ch.indices);
    const SymbolCounts counts = CountSymbols(planes);
    double r = 0.0;
    for (int s = 0; s < 256; ++s) {
      if (counts[s]) r += double(counts[s]) * (dist.bits(uint8_t(s)) + (s & 15));
    }
    *bits = r;
  }
  return total;
}

// Ideal AC symbol bits of |counts| under |dist|, amplitude bits excluded.
double SymbolBits(const SymbolCounts& counts, const RlsDistribution& dist) {
  double r = 0.0;
  for (int s = 0; s < 256; ++s) {
    if (counts[s]) r += double(counts[s]) * dist.bits(uint8_t(s));
  }
  return r;
}

struct PlaneInput {
  const DctPlane* plane;
  const WeightVector* weights;
};

OptimizationResult Optimize(std::span<const PlaneInput> inputs,
                            const QuantTable& q0, const OptimizerConfig& cfg) {
  cfg.Validate();
  const int threads = ResolveThreadCount(cfg.threads);
  OptimizationResult result;
  result.indices.resize(inputs.size());
  std::vector<ChannelState> channels(inputs.size());
  std::vector<const std::vector<IndexBlock>*> index_views(inputs.size());
  for (size_t c = 0; c < inputs.size(); ++c) {
    const auto& blocks = inputs[c].plane->blocks;
    auto& idx = result.indices[c];
    idx.resize(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) idx[b] = InitialIndices(blocks[b], q0);
    channels[c] = {inputs[c].plane, &idx, inputs[c].weights};
    index_views[c] = &idx;
  }

  QuantTable q = q0;
  RlsDistribution dist = UpdateDistribution(index_views);
  IterationTrace& trace = result.trace;
  trace.q0 = q0;
  trace.initial_cost = TotalCost(channels, q, dist, cfg.beta, nullptr, nullptr);
  double prev_cost = trace.initial_cost;

  for (int it = 0; it < cfg.max_iters; ++it) {
    IterationRecord rec;
    // Step 2: trellis pass with (q, dist) fixed.
    size_t kept = 0;
    for (size_t c = 0; c < inputs.size(); ++c) {
      const auto& blocks = inputs[c].plane->blocks;
      auto& idx = result.indices[c];
      const WeightVector& w = *inputs[c].weights;
      std::vector<unsigned char> keep(blocks.size(), 0);
      ParallelFor(blocks.size(), threads, [&](size_t begin, size_t end) {
        for (size_t b = begin; b < end; ++b) {
          const TrellisResult t =
              TrellisBlock(blocks[b], q, w, dist, cfg.beta, cfg.radius);
          const double old =
              AcPathCost(blocks[b], idx[b], q.steps(), w, dist, cfg.beta);
          IndexBlock next = t.indices;
          if (old < t.cost) {
            next = idx[b];
            keep[b] = 1;
          }
          next[0] = RoundHalfAway(blocks[b][0] / q[0]);
          idx[b] = next;
        }
      });
      for (unsigned char k : keep) kept += k;
    }
    rec.kept_blocks = kept;
    rec.cost_after_trellis = TotalCost(channels, q, dist, cfg.beta, nullptr, nullptr);

    // Step 3: refit the table, then the distribution.
    q = UpdateQ(channels, q);
    RlsDistribution refit = UpdateDistribution(index_views);
    const SymbolCounts counts = CountSymbols(index_views);
    if (SymbolBits(counts, refit) <= SymbolBits(counts, dist)) {
      dist = std::move(refit);
    } else {
      rec.kept_distribution = true;
    }
    rec.cost_after_update =
        TotalCost(channels, q, dist, cfg.beta, &rec.hmoe, &rec.ideal_bits);
    rec.q = q;
    trace.iterations.push_back(rec);

    const double cost = rec.cost_after_update;
    const double rel = prev_cost > 0.0 ? (prev_cost - cost) / prev_cost : 0.0;
    prev_cost = cost;
    if (rel < cfg.epsilon) {
      trace.converged = true;
      break;
    }
  }
  result.q = q;
  result.dist = std::move(dist);
  return result;
}

}  // namespace

void OptimizerConfig::Validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("beta must be a finite positive number");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a finite nonnegative number");
  }
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (radius < 1) throw InvalidArgument("radius must be at least 1");
  if (quality < 1 || quality > 100) {
    throw InvalidArgument("quality must be in [1, 100]");
  }
  if (threads < 0) throw InvalidArgument("threads must be nonnegative");
}

TrellisResult TrellisSearch(std::span<const double> x, std::span<const int> steps,
                            std::span<const double> w,
                            const RlsDistribution& dist, double beta,
                            int radius) {
  const int n = static_cast<int>(x.size());
  CheckTrellisArgs(x.size(), steps.size(), w.size());
  if (radius < 1) throw InvalidArgument("radius must be at least 1");

  double zero[kDctBlockSize];
  for (int j = 1; j < n; ++j) zero[j] = HmoeTerm(x[j], 0, steps[j], w[j]);
  double tail[kDctBlockSize];
  tail[n - 1] = 0.0;
  for (int p = n - 2; p >= 0; --p) tail[p] = tail[p + 1] + zero[p + 1];

  double sym_bits[16][kMaxAcSizeCategory + 1];
  for (int r = 0; r < 16; ++r) {
    for (int s = 1; s <= kMaxAcSizeCategory; ++s) {
      sym_bits[r][s] = dist.bits(uint8_t((r << 4) | s));
    }
  }
  const double zrl_bits = dist.bits(kZrlSymbol);
  const double eob_bits = dist.bits(kEobSymbol);

  Node nodes[kDctBlockSize];
  nodes[0].cost = 0.0;
  nodes[0].reached = true;

  std::vector<int> cand;
  std::vector<double> cdist;
  std::vector<int> csize;
  cand.reserve(2 * radius + 1);
  for (int k = 1; k < n; ++k) {
    const int h = HardAc(x[k], steps[k]);
    cand.clear();
    for (int a = h - radius; a <= h + radius; ++a) {
      const int c = std::clamp(a, -kMaxAcIndex, kMaxAcIndex);
      if (c == 0 || (!cand.empty() && cand.back() == c)) continue;
      cand.push_back(c);
    }
    const int nc = static_cast<int>(cand.size());
    cdist.resize(nc);
    csize.resize(nc);
    for (int i = 0; i < nc; ++i) {
      cdist[i] = HmoeTerm(x[k], cand[i], steps[k], w[k]);
      csize[i] = SizeCategory(cand[i]);
    }
    Node& node = nodes[k];
    double zd = 0.0;
    for (int p = k - 1; p >= 0; --p) {
      if (p < k - 1) zd += zero[p + 1];
      const Node& from = nodes[p];
      if (!from.reached) continue;
      const int gap = k - p - 1;
      const int zrls = gap >> 4;
      const int r = gap & 15;
      for (int i = 0; i < nc; ++i) {
        const double c = from.cost + TransitionCost(zd, cdist[i], zrls, zrl_bits,
                                                    sym_bits[r][csize[i]],
                                                    csize[i], beta);
        const int nz = from.nonzeros + 1;
        const long long as = from.abs_sum + std::abs(cand[i]);
        if (Improves(c, nz, as, node)) {
          node.cost = c;
          node.nonzeros = nz;
          node.abs_sum = as;
          node.prev = p;
          node.amplitude = cand[i];
          node.reached = true;
        }
      }
    }
  }

  Node best;
  int last = -1;
  for (int p = 0; p < n; ++p) {
    const Node& nd = nodes[p];
    if (!nd.reached) continue;
    const double c = p == n - 1 ? nd.cost : nd.cost + EobCost(tail[p], eob_bits, beta);
    if (Improves(c, nd.nonzeros, nd.abs_sum, best)) {
      best = nd;
      best.cost = c;
      best.reached = true;
      last = p;
    }
  }

  TrellisResult out;
  out.cost = best.cost;
  out.nonzeros = best.nonzeros;
  for (int p = last; p > 0; p = nodes[p].prev) {
    out.indices[p] = nodes[p].amplitude;
  }
  return out;
}

TrellisResult TrellisBlock(const DctBlock& x, const QuantTable& q,
                           const WeightVector& w, const RlsDistribution& dist,
                           double beta, int radius) {
  return TrellisSearch(x, q.steps(), w, dist, beta, radius);
}

double AcPathCost(std::span<const double> x, std::span<const int> indices,
                  std::span<const int> steps, std::span<const double> w,
                  const RlsDistribution& dist, double beta) {
  const int n = static_cast<int>(x.size());
  CheckTrellisArgs(x.size(), steps.size(), w.size());
  if (indices.size() < x.size()) throw InvalidArgument("index block too short");
  double total = 0.0;
  int p = 0;
  for (int k = 1; k < n; ++k) {
    const int a = indices[k];
    if (a == 0) continue;
    double zd = 0.0;
    for (int j = k - 1; j > p; --j) zd += HmoeTerm(x[j], 0, steps[j], w[j]);
    const int gap = k - p - 1;
    const int s = SizeCategory(a);
    if (s > kMaxAcSizeCategory) throw InvalidArgument("AC index out of range");
    total += TransitionCost(zd, HmoeTerm(x[k], a, steps[k], w[k]), gap >> 4,
                            dist.bits(kZrlSymbol),
                            dist.bits(uint8_t(((gap & 15) << 4) | s)), s, beta);
    p = k;
  }
  if (p != n - 1) {
    double tail = 0.0;
    for (int j = n - 1; j > p; --j) tail += HmoeTerm(x[j], 0, steps[j], w[j]);
    total += EobCost(tail, dist.bits(kEobSymbol), beta);
  }
  return total;
}

IndexBlock InitialIndices(const DctBlock& x, const QuantTable& q) {
  IndexBlock out{};
  out[0] = RoundHalfAway(x[0] / q[0]);
  for (int k = 1; k < kDctBlockSize; ++k) out[k] = HardAc(x[k], q[k]);
  return out;
}

SymbolCounts CountSymbols(std::span<const std::vector<IndexBlock>* const> planes) {
  SymbolCounts counts{};
  for (const auto* plane : planes) {
    for (const IndexBlock& b : *plane) CountAcSymbols(AcRunLengths(b), counts);
  }
  return counts;
}

RlsDistribution InitDistribution(std::span<const DctPlane* const> planes,
                                 const QuantTable& q0) {
  std::vector<std::vector<IndexBlock>> idx(planes.size());
  std::vector<const std::vector<IndexBlock>*> views;
  for (size_t c = 0; c < planes.size(); ++c) {
    for (const DctBlock& b : planes[c]->blocks) idx[c].push_back(InitialIndices(b, q0));
    views.push_back(&idx[c]);
  }
  return UpdateDistribution(views);
}

RlsDistribution InitDistribution(const DctPlane& plane, const QuantTable& q0) {
  const DctPlane* planes[] = {&plane};
  return InitDistribution(planes, q0);
}

RlsDistribution UpdateDistribution(
    std::span<const std::vector<IndexBlock>* const> planes) {
  return RlsDistribution::FromCounts(CountSymbols(planes), true);
}

int UpdateStep(std::span<const double> x, std::span<const int> indices,
               std::span<const double> w, int current) {
  if (x.size() != indices.size() || x.size() != w.size()) {
    throw InvalidArgument("UpdateStep inputs differ in length");
  }
  double num = 0.0;
  double den = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const double i = indices[j];
    num += w[j] * x[j] * i;
    den += w[j] * i * i;
  }
  if (den == 0.0) return current;
  const double ratio = num / den;
  const int guess = static_cast<int>(std::clamp(std::round(ratio), double(kMinStep), double(kMaxStep)));
  // Settle float noise near half-integers by direct comparison.
  auto cost = [&](int q) {
    double e = 0.0;
    for (size_t j = 0; j < x.size(); ++j) e += HmoeTerm(x[j], indices[j], q, w[j]);
    return e;
  };
  int best = guess;
  double best_cost = cost(guess);
  for (int q : {guess - 1, guess + 1}) {
    if (q < kMinStep || q > kMaxStep) continue;
    const double c = cost(q);
    if (c < best_cost || (c == best_cost && q > best)) {
      best = q;
      best_cost = c;
    }
  }
  return best;
}

QuantTable UpdateQ(std::span<const ChannelState> channels,
                   const QuantTable& current) {
  std::array<int, kDctBlockSize> steps = current.steps();
  std::vector<double> x;
  std::vector<int> idx;
  std::vector<double> w;
  for (int i = 0; i < kDctBlockSize; ++i) {
    x.clear();
    idx.clear();
    w.clear();
    for (const ChannelState& ch : channels) {
      const auto& blocks = ch.plane->blocks;
      for (size_t b = 0; b < blocks.size(); ++b) {
        const int a = (*ch.indices)[b][i];
        if (a == 0) continue;
        x.push_back(blocks[b][i]);
        idx.push_back(a);
        w.push_back((*ch.weights)[i]);
      }
    }
    steps[i] = UpdateStep(x, idx, w, current[i]);
  }
  return QuantTable(steps);
}

std::vector<double> IterationTrace::CostSequence() const {
  std::vector<double> out{initial_cost};
  for (const auto& r : iterations) {
    out.push_back(r.cost_after_trellis);
    out.push_back(r.cost_after_update);
  }
  return out;
}

bool IterationTrace::IsNonincreasing(double relative_slack) const {
  const std::vector<double> seq = CostSequence();
  for (size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] > seq[i - 1] + relative_slack * std::abs(seq[i - 1])) return false;
  }
  return true;
}

double IterationTrace::final_cost() const {
  return iterations.empty() ? initial_cost : iterations.back().cost_after_update;
}

OptimizationResult OptimizeLuma(const DctPlane& plane, const QuantTable& q0,
                                const WeightVector& w,
                                const OptimizerConfig& cfg) {
  const PlaneInput inputs[] = {{&plane, &w}};
  return Optimize(inputs, q0, cfg);
}

OptimizationResult OptimizeChromaJoint(const DctPlane& cb, const DctPlane& cr,
                                       const QuantTable& q0,
                                       const WeightVector& w_cb,
                                       const WeightVector& w_cr,
                                       const OptimizerConfig& cfg) {
  if (cb.block_count() != cr.block_count()) {
    throw InvalidArgument("Cb and Cr planes differ in block count");
  }
  const PlaneInput inputs[] = {{&cb, &w_cb}, {&cr, &w_cr}};
  return Optimize(inputs, q0, cfg);
}

}  // namespace hmojpeg
