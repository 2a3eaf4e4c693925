#include "specden/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specden/linalg.hpp"
#include "specden/parallel.hpp"

namespace specden {

MomentVector exact_moments(const SpectralMeasure& p, int k) {
  if (k < 1) throw std::invalid_argument("exact_moments: k must be >= 1");
  MomentVector m;
  m.values.assign(static_cast<size_t>(k), 0.0);
  for (const auto& a : p.atoms()) {
    double pw = 1.0;
    for (int j = 0; j < k; ++j) {
      pw *= a.value;
      m.values[static_cast<size_t>(j)] += a.mass * pw;
    }
  }
  return m;
}

MomentVector exact_moments_dense(const WeightedGraph& g, int k, int size_guard) {
  if (k < 1) throw std::invalid_argument("exact_moments_dense: k must be >= 1");
  const DenseMatrix a = dense_normalized_adjacency(g, size_guard);
  const double n = static_cast<double>(g.vertex_count());
  MomentVector m;
  m.values.reserve(static_cast<size_t>(k));
  DenseMatrix power = a;
  m.values.push_back(trace(power) / n);
  for (int j = 2; j <= k; ++j) {
    power = matmul(power, a);
    m.values.push_back(trace(power) / n);
  }
  return m;
}

double hoeffding_delta(int k, int64_t walks_per_moment) {
  return std::sqrt(std::log(2.0 * k / 0.1) / (2.0 * static_cast<double>(walks_per_moment)));
}

MomentVector estimate_moments_walks(const WeightedGraph& g, int k, int64_t walks_per_moment,
                                    RandomSource rng, int threads) {
  if (k < 1) throw std::invalid_argument("estimate_moments_walks: k must be >= 1");
  if (walks_per_moment < 1) {
    throw std::invalid_argument("estimate_moments_walks: walk count must be >= 1");
  }
  const int n = g.vertex_count();
  MomentVector m;
  m.values.assign(static_cast<size_t>(k), 0.0);

  constexpr int64_t kChunk = 4096;  // fixed so results are thread-count independent
  for (int j = 1; j <= k; ++j) {
    const RandomSource jr = rng.derive(static_cast<uint64_t>(j));
    const int64_t chunks = (walks_per_moment + kChunk - 1) / kChunk;
    std::vector<int64_t> returns(static_cast<size_t>(chunks), 0);
    parallel_units(chunks, threads, [&](int64_t c) {
      const int64_t lo = c * kChunk;
      const int64_t hi = std::min<int64_t>(lo + kChunk, walks_per_moment);
      int64_t hits = 0;
      for (int64_t w = lo; w < hi; ++w) {
        RandomSource wr = jr.derive(static_cast<uint64_t>(w));
        const int start = wr.next_vertex(n);
        int v = start;
        for (int s = 0; s < j; ++s) v = walk_step(g, v, wr);
        hits += (v == start) ? 1 : 0;
      }
      returns[static_cast<size_t>(c)] = hits;
    });
    int64_t total = 0;
    for (int64_t h : returns) total += h;
    m.values[static_cast<size_t>(j) - 1] =
        static_cast<double>(total) / static_cast<double>(walks_per_moment);
  }
  m.accuracy = MomentAccuracy::ADDITIVE;
  m.delta = hoeffding_delta(k, walks_per_moment);
  return m;
}

MomentGapReport moment_gap_report(const MomentVector& p1, const MomentVector& p2) {
  if (p1.accuracy != MomentAccuracy::EXACT || p2.accuracy != MomentAccuracy::EXACT) {
    throw std::invalid_argument("moment_gap_report: inputs must be EXACT");
  }
  if (p1.k() != p2.k()) throw std::invalid_argument("moment_gap_report: k mismatch");
  constexpr double kRelGuard = 1e-12;
  MomentGapReport r;
  const size_t k = p1.values.size();
  r.additive.assign(k, 0.0);
  r.relative.assign(k, 0.0);
  r.relative_defined.assign(k, 0);
  for (size_t j = 0; j < k; ++j) {
    const double gap = std::fabs(p1.values[j] - p2.values[j]);
    r.additive[j] = gap;
    r.max_additive = std::max(r.max_additive, gap);
    if (std::fabs(p1.values[j]) > kRelGuard) {
      r.relative[j] = gap / std::fabs(p1.values[j]);
      r.relative_defined[j] = 1;
      r.max_relative = std::max(r.max_relative, r.relative[j]);
    }
  }
  return r;
}

}  // namespace specden
