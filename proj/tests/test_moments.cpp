#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "specden/graph.hpp"
#include "specden/instances.hpp"
#include "specden/linalg.hpp"
#include "specden/measure.hpp"
#include "specden/moments.hpp"
#include "specden/random.hpp"
#include "specden/spectra.hpp"

using namespace specden;

namespace {

WeightedGraph cycle_graph(int len) {
  std::vector<Edge> edges;
  for (int i = 1; i < len; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({len, 1, 1.0});
  return build_graph(len, std::move(edges));
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("exact_moments of a point mass at zero") {
  const MomentVector m = exact_moments(SpectralMeasure::point_mass(0.0, -1.0, 1.0), 6);
  for (double v : m.values) CHECK(v == 0.0);
  CHECK(m.accuracy == MomentAccuracy::EXACT);
}

TEST_CASE("cycle second moment matches the trace oracle") {
  // Independent oracle: tr(A(R_5)^2)/5 with A built by hand.
  const int n = 5;
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)][static_cast<size_t>((i + 1) % n)] = 0.5;
    a[static_cast<size_t>((i + 1) % n)][static_cast<size_t>(i)] = 0.5;
  }
  double tr2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      tr2 += a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
             a[static_cast<size_t>(k)][static_cast<size_t>(i)];
    }
  }
  const double oracle = tr2 / n;
  CHECK(oracle == doctest::Approx(0.5));
  CHECK(exact_moments(cycle_spectrum(5), 2).moment(2) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("exact_moments_dense on basic graphs") {
  const WeightedGraph loops = build_graph(3, {{1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}});
  const MomentVector all_ones = exact_moments_dense(loops, 5);
  for (double v : all_ones.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const MomentVector r5 = exact_moments_dense(cycle_graph(5), 4);
  CHECK(r5.moment(2) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r5.moment(4) == doctest::Approx(0.375).epsilon(1e-9));
  // closed-walk count form 2^-j * C(j, j/2) for even j below the girth
  CHECK(r5.moment(2) == doctest::Approx(binom(2, 1) / 4.0));
  CHECK(r5.moment(4) == doctest::Approx(binom(4, 2) / 16.0));
}

TEST_CASE("odd ring moments vanish below the cycle length") {
  for (int len : {5, 7}) {
    const MomentVector m = exact_moments_dense(cycle_graph(len), len - 1);
    for (int j = 1; j < len; j += 2) CHECK(std::fabs(m.moment(j)) <= 1e-12);
  }
}

TEST_CASE("exact_moments_dense equals exact_moments of the dense spectrum") {
  RandomSource rng(55);
  for (int rep = 0; rep < 3; ++rep) {
    const int n = 10;
    std::vector<Edge> edges;
    for (int v = 1; v <= n; ++v) edges.push_back({v, v % n + 1, 0.2 + rng.next_double()});
    edges.push_back({1, 5, 0.7});
    edges.push_back({2, 8, 1.3});
    const WeightedGraph g = build_graph(n, edges);
    const MomentVector via_trace = exact_moments_dense(g, 10);
    const SpectralMeasure spec = SpectralMeasure::from_values(
        dense_symmetric_eigenvalues(dense_normalized_adjacency(g)), -1.0, 1.0);
    const MomentVector via_spec = exact_moments(spec, 10);
    for (int j = 1; j <= 10; ++j) {
      CHECK(std::fabs(via_trace.moment(j) - via_spec.moment(j)) <= 1e-9);
    }
  }
}

TEST_CASE("walk estimator is exact on a self-loop graph") {
  const WeightedGraph loops = build_graph(2, {{1, 1, 1.0}, {2, 2, 1.0}});
  const MomentVector m = estimate_moments_walks(loops, 4, 500, RandomSource(1));
  for (double v : m.values) CHECK(v == 1.0);
  CHECK(m.accuracy == MomentAccuracy::ADDITIVE);
  CHECK(m.delta == doctest::Approx(hoeffding_delta(4, 500)));
  CHECK(hoeffding_delta(4, 500) ==
        doctest::Approx(std::sqrt(std::log(2.0 * 4 / 0.1) / (2.0 * 500))));
}

TEST_CASE("walk estimator concentrates on the even cycle") {
  const MomentVector m = estimate_moments_walks(cycle_graph(6), 2, 100000, RandomSource(2));
  CHECK(std::fabs(m.moment(2) - 0.5) <= 0.01);
}

TEST_CASE("walk estimator on the isolated-vertex instance") {
  const WeightedGraph g = gen_mom_instance(5, Which::G1);  // 160 vertices
  const MomentVector m = estimate_moments_walks(g, 3, 100000, RandomSource(3));
  CHECK(m.moment(3) >= 0.49);
  CHECK(m.moment(3) <= 0.52);
}

TEST_CASE("walk estimator is unbiased across seeded repetitions") {
  // Fixed 100-vertex weighted graph.
  const int n = 100;
  std::vector<Edge> edges;
  RandomSource gr(1234);
  for (int v = 1; v <= n; ++v) edges.push_back({v, v % n + 1, 0.3 + gr.next_double()});
  for (int c = 0; c < 30; ++c) {
    const int u = gr.next_vertex(n);
    const int v = gr.next_vertex(n);
    const int a = std::min(u, v);
    const int b = std::max(u, v);
    bool dup = (a == b) || (a % n + 1 == b) || (b % n + 1 == a);
    for (const auto& e : edges) dup = dup || (e.u == a && e.v == b);
    if (!dup) edges.push_back({a, b, 0.2 + gr.next_double()});
  }
  const WeightedGraph g = build_graph(n, edges);
  const MomentVector truth = exact_moments_dense(g, 8);

  const int reps = 200;
  const int64_t walks = 2000;
  std::vector<std::vector<double>> estimates(8, std::vector<double>());
  for (int rep = 0; rep < reps; ++rep) {
    const MomentVector m = estimate_moments_walks(g, 8, walks, RandomSource(50, rep));
    for (int j = 1; j <= 8; ++j) estimates[static_cast<size_t>(j) - 1].push_back(m.moment(j));
  }
  for (int j = 1; j <= 8; ++j) {
    const auto& e = estimates[static_cast<size_t>(j) - 1];
    double mean = 0.0;
    for (double v : e) mean += v;
    mean /= reps;
    double var = 0.0;
    for (double v : e) var += (v - mean) * (v - mean);
    var /= (reps - 1);
    const double se = std::sqrt(var / reps);
    CHECK(std::fabs(mean - truth.moment(j)) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("moment gaps of the isolated-vertex pair") {
  {
    const auto [p1, p2] = mom_instance_spectrum(5, mom_default_n(5));
    const MomentGapReport gaps =
        moment_gap_report(exact_moments(p1, 40), exact_moments(p2, 40));
    for (int j = 1; j < 5; ++j) CHECK(gaps.additive[static_cast<size_t>(j) - 1] <= 1e-12);
    CHECK(gaps.max_relative <= std::ldexp(1.0, -3));
  }
  {
    const auto [p1, p2] = mom_instance_spectrum(7, mom_default_n(7));
    const MomentGapReport gaps =
        moment_gap_report(exact_moments(p1, 60), exact_moments(p2, 60));
    for (int j = 1; j < 7; ++j) CHECK(gaps.additive[static_cast<size_t>(j) - 1] <= 1e-12);
    for (int j = 7; j <= 60; ++j) {
      CHECK(gaps.additive[static_cast<size_t>(j) - 1] <= std::ldexp(1.0, -6));
    }
  }
}

TEST_CASE("moment_gap_report guards zero moments") {
  MomentVector zero;
  zero.values = {0.0, 0.0};
  MomentVector other;
  other.values = {0.1, 0.2};
  const MomentGapReport gaps = moment_gap_report(zero, other);
  CHECK(gaps.relative_defined[0] == 0);
  CHECK(gaps.additive[0] == doctest::Approx(0.1));

  const MomentGapReport none = moment_gap_report(other, other);
  CHECK(none.max_additive == 0.0);
  CHECK(none.max_relative == 0.0);

  MomentVector estimated = other;
  estimated.accuracy = MomentAccuracy::ADDITIVE;
  CHECK_THROWS_AS(moment_gap_report(estimated, other), std::invalid_argument);
}

TEST_CASE("isolated-vertex spectra keep all moments in [1/2, 1]") {
  const auto [p1, p2] = mom_instance_spectrum(5, mom_default_n(5));
  for (const SpectralMeasure* p : {&p1, &p2}) {
    const MomentVector m = exact_moments(*p, 200);
    for (double v : m.values) {
      CHECK(v >= 0.5 - 1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("short and long cycles share their low moments") {
  for (int ell : {3, 5, 7, 9, 11}) {
    const MomentVector a = exact_moments(cycle_spectrum(ell), ell - 1);
    const MomentVector b = exact_moments(cycle_spectrum_even(2 * ell), ell - 1);
    for (int j = 1; j < ell; ++j) {
      CHECK(std::fabs(a.moment(j) - b.moment(j)) <= 1e-12);
    }
  }
}
