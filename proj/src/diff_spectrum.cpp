#include "specden/diff_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specden/errors.hpp"
#include "specden/linalg.hpp"
#include "specden/parallel.hpp"

namespace specden {

void check_common_degrees(const WeightedGraph& g1, const WeightedGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count()) {
    throw std::invalid_argument("diff_spectrum: vertex counts differ");
  }
  for (int v = 1; v <= g1.vertex_count(); ++v) {
    if (std::fabs(g1.degree(v) - g2.degree(v)) > 1e-12) {
      throw std::invalid_argument("diff_spectrum: degree mismatch at vertex " +
                                  std::to_string(v));
    }
  }
}

std::pair<int, int> alternating_walk(const WeightedGraph& g1, const WeightedGraph& g2,
                                     const AlternationPattern& pattern, RandomSource& rng) {
  if (pattern.length < 1) throw std::invalid_argument("alternating_walk: empty pattern");
  const int start = rng.next_vertex(g1.vertex_count());
  int v = start;
  for (int i = 0; i < pattern.length; ++i) {
    v = walk_step(pattern.uses_g1(i) ? g1 : g2, v, rng);
  }
  return {start, v};
}

int64_t diff_samples_per_pattern(int j, double theta, double delta, int k) {
  if (j < 1 || k < 1) throw std::invalid_argument("diff_samples_per_pattern: bad j or k");
  if (!(theta > 0.0 && theta < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("diff_samples_per_pattern: theta, delta must be in (0,1)");
  }
  const double count = 0.5 * std::pow(theta, -2.0) * static_cast<double>(j) *
                       std::pow(4.0, j) * std::log(2.0 * k / delta);
  if (count > 9e18) throw budget_error("diff_samples_per_pattern: sample count overflow");
  return static_cast<int64_t>(std::ceil(count));
}

DiffMomentEstimate estimate_diff_moments(const WeightedGraph& g1, const WeightedGraph& g2,
                                         int k, double theta, double delta, RandomSource rng,
                                         int64_t budget_cap_steps, int threads) {
  check_common_degrees(g1, g2);
  if (k < 1 || k > 30) throw std::invalid_argument("estimate_diff_moments: k out of range");

  DiffMomentEstimate est;
  est.k = k;
  est.theta = theta;
  est.delta = delta;
  est.samples_per_pattern.assign(static_cast<size_t>(k), 0);

  // Budget check up front: 2^j patterns, N_j samples of j steps each.
  double total_steps = 0.0;
  for (int j = 1; j <= k; ++j) {
    const int64_t nj = diff_samples_per_pattern(j, theta, delta, k);
    est.samples_per_pattern[static_cast<size_t>(j) - 1] = nj;
    total_steps += std::ldexp(static_cast<double>(nj) * j, j);  // nj * j * 2^j
  }
  if (total_steps > static_cast<double>(budget_cap_steps)) {
    throw budget_error("estimate_diff_moments: requested " + std::to_string(total_steps) +
                       " walk steps exceeds the budget cap of " +
                       std::to_string(budget_cap_steps));
  }

  est.moments.assign(static_cast<size_t>(k), 0.0);
  for (int j = 1; j <= k; ++j) {
    const int64_t nj = est.samples_per_pattern[static_cast<size_t>(j) - 1];
    const uint32_t npat = uint32_t(1) << j;
    const RandomSource jr = rng.derive(static_cast<uint64_t>(j));
    std::vector<int64_t> returns(npat, 0);
    parallel_units(npat, threads, [&](int64_t pat) {
      RandomSource pr = jr.derive(static_cast<uint64_t>(pat));
      const AlternationPattern pattern{static_cast<uint32_t>(pat), j};
      int64_t hits = 0;
      for (int64_t s = 0; s < nj; ++s) {
        const auto [start, end] = alternating_walk(g1, g2, pattern, pr);
        hits += (start == end) ? 1 : 0;
      }
      returns[static_cast<size_t>(pat)] = hits;
    });
    double signed_sum = 0.0;
    for (uint32_t pat = 0; pat < npat; ++pat) {
      const int zeros = j - __builtin_popcount(pat);
      const double frac = static_cast<double>(returns[pat]) / static_cast<double>(nj);
      signed_sum += (zeros % 2 == 0) ? frac : -frac;
    }
    est.moments[static_cast<size_t>(j) - 1] = signed_sum;
    est.total_steps += static_cast<int64_t>(npat) * nj * j;
  }
  return est;
}

SpectralMeasure exact_diff_spectrum(const WeightedGraph& g1, const WeightedGraph& g2,
                                    int size_guard) {
  check_common_degrees(g1, g2);
  const DenseMatrix a1 = dense_normalized_adjacency(g1, size_guard);
  const DenseMatrix a2 = dense_normalized_adjacency(g2, size_guard);
  const std::vector<double> eigs = dense_symmetric_eigenvalues(subtract(a1, a2));
  return SpectralMeasure::from_values(eigs, -2.0, 2.0);
}

DiffPipelineResult diff_spectrum_pipeline(const WeightedGraph& g1, const WeightedGraph& g2,
                                          RandomSource rng, const DiffPipelineOptions& opts) {
  check_common_degrees(g1, g2);
  int k;
  double theta;
  if (opts.eps.has_value()) {
    const double eps = *opts.eps;
    if (!(eps > 0.0)) throw std::invalid_argument("diff_spectrum_pipeline: eps must be > 0");
    k = static_cast<int>(std::ceil(4.0 * opts.C / eps));
    theta = eps / std::pow(3.0, 2 * k + 2);
  } else if (opts.k.has_value() && opts.theta.has_value()) {
    k = *opts.k;
    theta = *opts.theta;
  } else {
    throw std::invalid_argument(
        "diff_spectrum_pipeline: need either eps (exact mode) or k and theta (relaxed mode)");
  }

  DiffPipelineResult out;
  out.estimate = estimate_diff_moments(g1, g2, k, theta, opts.delta, rng,
                                       opts.budget_cap_steps, opts.threads);

  MomentVector target;
  target.values = out.estimate.moments;
  target.accuracy = MomentAccuracy::ADDITIVE;
  target.delta = theta;
  const int grid = opts.grid_override.value_or(4 * k + 1);
  out.recon = solve_moment_lp(target, -2.0, 2.0, grid);

  if (g1.vertex_count() <= opts.oracle_size_guard) {
    out.w1_to_exact = wasserstein1(out.recon.measure,
                                   exact_diff_spectrum(g1, g2, opts.oracle_size_guard));
  }
  return out;
}

}  // namespace specden
