#pragma once

#include <cstdint>
#include <vector>

#include "specden/graph.hpp"
#include "specden/measure.hpp"
#include "specden/random.hpp"

namespace specden {

enum class MomentAccuracy { EXACT, ADDITIVE, RELATIVE };

// Raw moments m_1..m_k with an accuracy annotation.
struct MomentVector {
  std::vector<double> values;
  MomentAccuracy accuracy = MomentAccuracy::EXACT;
  double delta = 0.0;

  int k() const { return static_cast<int>(values.size()); }
  double moment(int j) const { return values[static_cast<size_t>(j) - 1]; }
};

// m_j = sum over atoms of mass * value^j.
MomentVector exact_moments(const SpectralMeasure& p, int k);

// Dense-trace oracle: m_j = tr(A(G)^j) / n with A the normalized adjacency.
MomentVector exact_moments_dense(const WeightedGraph& g, int k, int size_guard = 8192);

// Return-probability estimator: for each j <= k, W fresh walks of length j
// from uniform starts; m_hat_j = fraction that end at their start. Annotated
// ADDITIVE with the Hoeffding radius for failure probability 0.1 split over k.
MomentVector estimate_moments_walks(const WeightedGraph& g, int k, int64_t walks_per_moment,
                                    RandomSource rng, int threads = 1);

double hoeffding_delta(int k, int64_t walks_per_moment);

struct MomentGapReport {
  std::vector<double> additive;          // |m_j(p1) - m_j(p2)|
  std::vector<double> relative;          // additive / |m_j(p1)| where defined
  std::vector<uint8_t> relative_defined; // 0 when |m_j(p1)| is below the guard
  double max_additive = 0.0;
  double max_relative = 0.0;
};

// Per-moment additive and relative gaps; requires both inputs EXACT.
MomentGapReport moment_gap_report(const MomentVector& p1, const MomentVector& p2);

}  // namespace specden
