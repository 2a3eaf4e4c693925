#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "specden/graph.hpp"
#include "specden/measure.hpp"
#include "specden/random.hpp"
#include "specden/reconstruct.hpp"

namespace specden {

// Bit pattern selecting which graph drives each step of an alternating walk;
// bit i set means step i+1 follows G1.
struct AlternationPattern {
  uint32_t bits = 0;
  int length = 0;

  bool uses_g1(int step) const { return ((bits >> step) & 1u) != 0; }
};

// Throws unless the two graphs share vertex count and degree vector (1e-12).
void check_common_degrees(const WeightedGraph& g1, const WeightedGraph& g2);

// Uniform start, then one step per pattern bit; returns (start, end).
std::pair<int, int> alternating_walk(const WeightedGraph& g1, const WeightedGraph& g2,
                                     const AlternationPattern& pattern, RandomSource& rng);

// ceil(0.5 * theta^-2 * j * 4^j * ln(2k/delta)) samples for each pattern of length j.
int64_t diff_samples_per_pattern(int j, double theta, double delta, int k);

struct DiffMomentEstimate {
  std::vector<double> moments;  // signed sums over patterns, j = 1..k
  int k = 0;
  double theta = 0.0;
  double delta = 0.0;
  std::vector<int64_t> samples_per_pattern;  // indexed by j-1
  int64_t total_steps = 0;
};

// Estimates the moments of the walk-matrix difference: for each length-j
// pattern x, the return frequency estimates tr(prod_i M_{x_i}) / n, and the
// signed sum over patterns (sign (-1)^{#zeros}) targets tr((M1 - M0)^j) / n.
DiffMomentEstimate estimate_diff_moments(const WeightedGraph& g1, const WeightedGraph& g2,
                                         int k, double theta, double delta, RandomSource rng,
                                         int64_t budget_cap_steps = 2000000000,
                                         int threads = 1);

// Dense eigenvalues of D^{-1/2} (A1 - A2) D^{-1/2} as a measure on [-2, 2].
SpectralMeasure exact_diff_spectrum(const WeightedGraph& g1, const WeightedGraph& g2,
                                    int size_guard = 8192);

struct DiffPipelineOptions {
  // Exact mode: k = ceil(4C/eps), theta = eps / 3^(2k+2).
  std::optional<double> eps;
  double C = 1.0;
  // Relaxed mode: user-supplied parameters.
  std::optional<int> k;
  std::optional<double> theta;
  double delta = 0.1;
  int64_t budget_cap_steps = 2000000000;
  int threads = 1;
  std::optional<int> grid_override;
  int oracle_size_guard = 8192;
};

struct DiffPipelineResult {
  ReconstructionResult recon;
  DiffMomentEstimate estimate;
  std::optional<double> w1_to_exact;  // present when the dense oracle fits the guard
};

// Moment estimation followed by the moment LP on [-2, 2].
DiffPipelineResult diff_spectrum_pipeline(const WeightedGraph& g1, const WeightedGraph& g2,
                                          RandomSource rng, const DiffPipelineOptions& opts);

}  // namespace specden
