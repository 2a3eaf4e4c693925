#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specden/graph.hpp"
#include "specden/measure.hpp"
#include "specden/moments.hpp"
#include "specden/random.hpp"

namespace specden {

struct ReconstructionResult {
  SpectralMeasure measure;
  double residual = 0.0;  // optimal max weighted moment deviation t*
  int64_t lp_pivots = 0;
  int grid_size = 0;
};

// Chebyshev-norm moment-matching LP: choose masses q >= 0 on a uniform grid
// over [lo, hi] with sum(q) = 1 minimizing max_j |m_j(q) - target_j| / w_j.
// Default weights are all 1.
ReconstructionResult solve_moment_lp(const MomentVector& target, double lo, double hi,
                                     int grid_size, std::vector<double> weights = {});

// W1 upper bound C * ((hi-lo)/k + 3^k * (hi-lo) * moment_l2_gap).
double kv_bound(int k, double lo, double hi, double moment_l2_gap, double C = 1.0);

int default_grid_size(int k, double eps);

struct SdeOptions {
  double c = 2.0;                        // k = ceil(c / eps)
  int64_t budget_cap_steps = 20000000;   // total walk steps across all moments
  int threads = 1;
  std::optional<int> grid_override;
};

struct SdeResult {
  ReconstructionResult recon;
  MomentVector moments;
  int k = 0;
  int64_t walks_per_moment = 0;
  int64_t steps_used = 0;
  int64_t steps_requested = 0;
  bool budget_limited = false;  // partial result: cap trimmed the walk budget
  double delta_target = 0.0;
  double delta_achieved = 0.0;
};

// End-to-end estimator: k = ceil(c/eps) raw moments from return-probability
// walks at target additive accuracy 2^-k * eps (trimmed to the budget cap),
// then the moment LP on [-1, 1].
SdeResult sde_pipeline(const WeightedGraph& g, double eps, RandomSource rng,
                       const SdeOptions& opts = {});

}  // namespace specden
