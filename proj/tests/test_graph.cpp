#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "specden/errors.hpp"
#include "specden/graph.hpp"
#include "specden/instances.hpp"
#include "specden/linalg.hpp"
#include "specden/random.hpp"

using namespace specden;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("build_graph degrees and self-loops") {
  const WeightedGraph g = build_graph(2, {{1, 2, 1.0}});
  CHECK(g.vertex_count() == 2);
  CHECK(g.degree(1) == doctest::Approx(1.0));
  CHECK(g.degree(2) == doctest::Approx(1.0));

  // Self-loop weight counts once toward the degree.
  const WeightedGraph loop = build_graph(1, {{1, 1, 1.0}});
  CHECK(loop.degree(1) == doctest::Approx(1.0));
  CHECK(loop.weight_between(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("build_graph rejects bad input") {
  CHECK_THROWS_AS(build_graph(2, {{1, 2, 1.0}, {2, 1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(2, {{1, 3, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(2, {{1, 2, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(3, {{1, 2, 1.0}}), std::invalid_argument);  // vertex 3 isolated
  CHECK_THROWS_AS(build_graph(2, {{1, 2, 0.0}}), std::invalid_argument);  // zero degree
}

TEST_CASE("ring instance vertices have unit degree") {
  const WeightedGraph g = gen_rw_instance(5, Which::G1, 4);
  for (int v = 1; v <= g.vertex_count(); ++v) {
    CHECK(std::fabs(g.degree(v) - 1.0) <= 1e-12);
  }
}

TEST_CASE("walk_step on forced transitions") {
  const WeightedGraph pair = build_graph(2, {{1, 2, 1.0}});
  const WeightedGraph loop = build_graph(1, {{1, 1, 1.0}});
  RandomSource rng(7);
  for (int i = 0; i < 200; ++i) {
    CHECK(walk_step(pair, 1, rng) == 2);
    CHECK(walk_step(pair, 2, rng) == 1);
    CHECK(walk_step(loop, 1, rng) == 1);
  }
}

TEST_CASE("walk_step ring-neighbor mass is one half on the overlay instance") {
  const WeightedGraph g = gen_rw_instance(5, Which::G1, 2048);
  // Vertex 1 lives in the first cycle; its ring neighbors are 2 and 5.
  RandomSource rng(11);
  int ring_hits = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const int v = walk_step(g, 1, rng);
    if (v == 2 || v == 5) ++ring_hits;
  }
  const double expected = 2.0 * (0.25 + g.overlay_weight());
  const double phat = static_cast<double>(ring_hits) / trials;
  CHECK(std::fabs(phat - expected) <= 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("walk_step frequencies match w(v,.)/deg(v)") {
  const WeightedGraph g =
      build_graph(4, {{1, 2, 0.5}, {1, 3, 1.5}, {1, 1, 1.0}, {3, 4, 2.0}, {2, 4, 1.0}});
  RandomSource rng(23);
  const int trials = 200000;
  int counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < trials; ++i) counts[walk_step(g, 1, rng)]++;
  const double deg = g.degree(1);
  for (int v : {1, 2, 3}) {
    const double p = g.weight_between(1, v) / deg;
    const double phat = static_cast<double>(counts[v]) / trials;
    CHECK(std::fabs(phat - p) <= 3.0 * std::sqrt(p * (1.0 - p) / trials));
  }
  CHECK(counts[4] == 0);
}

TEST_CASE("run_walks shape, determinism, and per-walk streams") {
  const WeightedGraph g = gen_rw_instance(3, Which::G1, 2);
  const WalkTranscript t = run_walks(g, 3, 2, {}, RandomSource(5));
  CHECK(t.m == 3);
  CHECK(t.T == 2);
  REQUIRE(t.walks.size() == 3);
  for (const auto& w : t.walks) CHECK(w.size() == 3);

  const WalkTranscript again = run_walks(g, 3, 2, {}, RandomSource(5));
  CHECK(t == again);

  // Walk i of a batch equals the same walk run alone from its derived stream,
  // so partitioning across workers cannot change transcripts.
  for (int i = 0; i < 3; ++i) {
    RandomSource wr = RandomSource(5).derive(static_cast<uint64_t>(i));
    std::vector<int> walk;
    int v = wr.next_vertex(g.vertex_count());
    walk.push_back(v);
    for (int s = 0; s < 2; ++s) {
      v = walk_step(g, v, wr);
      walk.push_back(v);
    }
    CHECK(t.walks[static_cast<size_t>(i)] == walk);
  }
}

TEST_CASE("run_walks uniform starts pass a chi-square sanity check") {
  const WeightedGraph g = gen_mixture_instance(5, 0.75, 4, Which::G1);  // 40 vertices
  const int n = g.vertex_count();
  const int m = 100000;
  const WalkTranscript t = run_walks(g, m, 1, {}, RandomSource(17));
  std::vector<int> counts(static_cast<size_t>(n) + 1, 0);
  for (const auto& w : t.walks) counts[static_cast<size_t>(w.front())]++;
  const double expected = static_cast<double>(m) / n;
  double chi2 = 0.0;
  for (int v = 1; v <= n; ++v) {
    const double d = counts[static_cast<size_t>(v)] - expected;
    chi2 += d * d / expected;
  }
  // df = 39; the 1e-6 quantile is ~95.
  CHECK(chi2 < 95.0);
}

TEST_CASE("run_walks validates explicit starts") {
  const WeightedGraph g = build_graph(2, {{1, 2, 1.0}});
  CHECK_THROWS_AS(run_walks(g, 2, 1, {1, 7}, RandomSource(0)), std::invalid_argument);
  const WalkTranscript t = run_walks(g, 2, 1, {2, 2}, RandomSource(0));
  CHECK(t.walks[0][0] == 2);
  CHECK(t.walks[1][0] == 2);
}

TEST_CASE("dense_normalized_adjacency on basic graphs") {
  const DenseMatrix edge = dense_normalized_adjacency(build_graph(2, {{1, 2, 1.0}}));
  CHECK(edge.at(0, 0) == 0.0);
  CHECK(edge.at(0, 1) == doctest::Approx(1.0));
  CHECK(edge.at(1, 0) == doctest::Approx(1.0));

  const DenseMatrix tri =
      dense_normalized_adjacency(build_graph(3, {{1, 2, 1.0}, {2, 3, 1.0}, {1, 3, 1.0}}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(tri.at(i, j) == doctest::Approx(i == j ? 0.0 : 0.5));
    }
  }
}

TEST_CASE("overlay instance materializes as half ring plus uniform block") {
  const int ell = 3;
  const int64_t n = 2;
  const WeightedGraph g = gen_rw_instance(ell, Which::G1, n);
  const int nv = g.vertex_count();
  const double ow = 1.0 / (4.0 * static_cast<double>(n) * ell);
  const DenseMatrix a = dense_normalized_adjacency(g);
  for (int u = 1; u <= nv; ++u) {
    for (int v = 1; v <= nv; ++v) {
      const int cu = (u - 1) / ell;
      const int cv = (v - 1) / ell;
      const int pu = (u - 1) % ell;
      const int pv = (v - 1) % ell;
      const bool ring_adjacent =
          cu == cv && (((pu + 1) % ell) == pv || ((pv + 1) % ell) == pu);
      const double expected = (ring_adjacent ? 0.25 : 0.0) + ow;
      CHECK(std::fabs(a.at(u - 1, v - 1) - expected) <= 1e-13);
    }
  }
}

TEST_CASE("normalized adjacency is symmetric with spectral radius at most one") {
  RandomSource rng(31);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Edge> edges;
    const int n = 12;
    for (int v = 1; v <= n; ++v) edges.push_back({v, v % n + 1, 0.5 + rng.next_double()});
    for (int extra = 0; extra < 6; ++extra) {
      const int u = rng.next_vertex(n);
      int v = rng.next_vertex(n);
      bool dup = u == v || (u % n + 1 == v) || (v % n + 1 == u);
      for (const auto& e : edges) dup = dup || (e.u == std::min(u, v) && e.v == std::max(u, v));
      if (!dup) edges.push_back({std::min(u, v), std::max(u, v), rng.next_double() + 0.1});
    }
    const DenseMatrix a = dense_normalized_adjacency(build_graph(n, edges));
    CHECK(max_asymmetry(a) <= 1e-15);
    const std::vector<double> eigs = dense_symmetric_eigenvalues(a);
    CHECK(eigs.back() <= 1.0 + 1e-9);
    CHECK(eigs.front() >= -1.0 - 1e-9);
  }
}

TEST_CASE("dense_normalized_adjacency size guard") {
  const WeightedGraph g = gen_rw_instance(3, Which::G1, 4);
  CHECK_THROWS_AS(dense_normalized_adjacency(g, 8), std::invalid_argument);
}

TEST_CASE("graph file round-trip is exact") {
  const std::string path = temp_path("specden_test_graph.txt");
  const WeightedGraph plain =
      build_graph(4, {{1, 2, 1.0 / 3.0}, {2, 3, 0.1234567890123456789}, {3, 4, 1e-17},
                      {4, 1, 2.5}, {1, 1, 0.75}});
  write_graph_file(path, plain);
  CHECK(read_graph_file(path) == plain);

  const WeightedGraph all_overlay = gen_rw_instance(3, Which::G2, 2);
  write_graph_file(path, all_overlay);
  CHECK(read_graph_file(path) == all_overlay);

  const WeightedGraph subset_overlay = gen_mom_instance(3, Which::G1, 2);
  write_graph_file(path, subset_overlay);
  CHECK(read_graph_file(path) == subset_overlay);

  std::filesystem::remove(path);
}

TEST_CASE("read_graph_file rejects malformed input") {
  const std::string path = temp_path("specden_bad_graph.txt");
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("2 1\n1 2\n", f);  // missing weight
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_graph_file(path), io_error);
  CHECK_THROWS_AS(read_graph_file(temp_path("no_such_file_specden.txt")), io_error);
  std::filesystem::remove(path);
}

TEST_CASE("random source streams are reproducible and distinct") {
  RandomSource a(42, 3);
  RandomSource b(42, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RandomSource c(42, 4);
  bool same = true;
  RandomSource a2(42, 3);
  for (int i = 0; i < 16; ++i) same = same && (a2.next_u64() == c.next_u64());
  CHECK_FALSE(same);

  // derive() is deterministic and independent of draws on the parent.
  RandomSource parent(9);
  RandomSource d1 = parent.derive(5);
  parent.next_u64();
  RandomSource d2 = parent.derive(5);
  CHECK(d1.next_u64() == d2.next_u64());
}
