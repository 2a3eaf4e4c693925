#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "specden/graph.hpp"
#include "specden/instances.hpp"
#include "specden/linalg.hpp"
#include "specden/measure.hpp"
#include "specden/random.hpp"
#include "specden/spectra.hpp"

using namespace specden;

namespace {

SpectralMeasure dense_spectrum_of(const WeightedGraph& g) {
  return SpectralMeasure::from_values(
      dense_symmetric_eigenvalues(dense_normalized_adjacency(g)), -1.0, 1.0);
}

std::vector<double> sorted_degrees(const WeightedGraph& g) {
  std::vector<double> d(g.degrees().begin() + 1, g.degrees().end());
  std::sort(d.begin(), d.end());
  return d;
}

// Connected component sizes via union-find over explicit edges.
std::map<int, int> component_size_histogram(const WeightedGraph& g) {
  std::vector<int> parent(static_cast<size_t>(g.vertex_count()) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };
  for (const auto& e : g.edges()) parent[static_cast<size_t>(find(e.u))] = find(e.v);
  std::map<int, int> sizes;
  for (int v = 1; v <= g.vertex_count(); ++v) sizes[find(v)]++;
  std::map<int, int> histogram;
  for (const auto& [root, size] : sizes) histogram[size]++;
  return histogram;
}

}  // namespace

TEST_CASE("mom instance has the paper's default scale") {
  CHECK(mom_default_n(5) == 8);
  const WeightedGraph g = gen_mom_instance(5, Which::G1);
  CHECK(g.vertex_count() == 160);
  for (int v = 1; v <= g.vertex_count(); ++v) CHECK(std::fabs(g.degree(v) - 1.0) <= 1e-12);
  CHECK(g.overlay_count() == 80);  // the 2nl cycle vertices
}

TEST_CASE("mom instance dense spectrum matches the closed form at default scale") {
  const auto [p1, p2] = mom_instance_spectrum(5, 8);
  const SpectralMeasure d1 = dense_spectrum_of(gen_mom_instance(5, Which::G1)).merged(1e-9);
  const SpectralMeasure c1 = p1.merged(1e-9);
  REQUIRE(d1.size() == c1.size());
  for (size_t i = 0; i < d1.size(); ++i) {
    CHECK(std::fabs(d1.atoms()[i].value - c1.atoms()[i].value) <= 1e-8);
    CHECK(std::fabs(d1.atoms()[i].mass - c1.atoms()[i].mass) <= 1e-8);
  }
  CHECK(std::fabs(wasserstein1(dense_spectrum_of(gen_mom_instance(5, Which::G2)), p2)) <= 1e-8);
}

TEST_CASE("rw instance shape at default and overridden scale") {
  CHECK(rw_default_n(5) == 2048);
  const WeightedGraph g = gen_rw_instance(5, Which::G1);
  CHECK(g.vertex_count() == 20480);
  CHECK(g.overlay_all());
  for (int v = 1; v <= g.vertex_count(); v += 997) {
    CHECK(std::fabs(g.degree(v) - 1.0) <= 1e-12);
  }

  const WeightedGraph small = gen_rw_instance(5, Which::G1, 4);
  CHECK(small.vertex_count() == 40);
  const auto [p1, p2] = rw_instance_spectrum(5, 4);
  CHECK(wasserstein1(dense_spectrum_of(small), p1) <= 1e-8);
  CHECK(wasserstein1(dense_spectrum_of(gen_rw_instance(5, Which::G2, 4)), p2) <= 1e-8);
}

TEST_CASE("mixture instance cycle counts") {
  const WeightedGraph g1 = gen_mixture_instance(3, 0.75, 4, Which::G1);
  CHECK(g1.vertex_count() == 24);
  for (int v = 1; v <= 24; ++v) CHECK(g1.degree(v) == doctest::Approx(2.0));
  const std::map<int, int> h1 = component_size_histogram(g1);
  CHECK(h1.at(6) == 3);
  CHECK(h1.at(3) == 2);

  const WeightedGraph g2 = gen_mixture_instance(3, 0.75, 4, Which::G2);
  const std::map<int, int> h2 = component_size_histogram(g2);
  CHECK(h2.at(6) == 1);
  CHECK(h2.at(3) == 6);

  const auto [p1, p2] = mixture_spectrum(3, 0.75, 4);
  CHECK(wasserstein1(dense_spectrum_of(g1), p1) <= 1e-8);
  CHECK(wasserstein1(dense_spectrum_of(g2), p2) <= 1e-8);
}

TEST_CASE("instance generators validate parameters") {
  CHECK_THROWS_AS(gen_mom_instance(4, Which::G1, 2), std::invalid_argument);
  CHECK_THROWS_AS(gen_rw_instance(1, Which::G1, 2), std::invalid_argument);
  CHECK_THROWS_AS(gen_mixture_instance(3, 0.55, 5, Which::G1), std::invalid_argument);
  CHECK_THROWS_AS(gen_mixture_instance(3, 1.5, 4, Which::G1), std::invalid_argument);
}

TEST_CASE("pairs share vertex count and degree multiset") {
  struct Case {
    WeightedGraph g1;
    WeightedGraph g2;
  };
  const Case cases[] = {
      {gen_mom_instance(3, Which::G1, 2), gen_mom_instance(3, Which::G2, 2)},
      {gen_rw_instance(3, Which::G1, 2), gen_rw_instance(3, Which::G2, 2)},
      {gen_mixture_instance(3, 0.75, 4, Which::G1), gen_mixture_instance(3, 0.75, 4, Which::G2)},
  };
  for (const auto& c : cases) {
    CHECK(c.g1.vertex_count() == c.g2.vertex_count());
    CHECK(sorted_degrees(c.g1) == sorted_degrees(c.g2));
  }
}

TEST_CASE("generated W1 matches the closed forms at desk scale") {
  CHECK(std::fabs(wasserstein1(dense_spectrum_of(gen_mom_instance(3, Which::G1, 2)),
                               dense_spectrum_of(gen_mom_instance(3, Which::G2, 2))) -
                  1.0 / 12.0) <= 1e-8);
  CHECK(std::fabs(wasserstein1(dense_spectrum_of(gen_rw_instance(3, Which::G1, 2)),
                               dense_spectrum_of(gen_rw_instance(3, Which::G2, 2))) -
                  1.0 / 6.0) <= 1e-8);
  CHECK(std::fabs(wasserstein1(dense_spectrum_of(gen_mixture_instance(3, 0.75, 4, Which::G1)),
                               dense_spectrum_of(gen_mixture_instance(3, 0.75, 4, Which::G2))) -
                  1.0 / 6.0) <= 1e-8);
}

TEST_CASE("relabeling preserves structure") {
  const WeightedGraph g = gen_mom_instance(3, Which::G1, 2);

  std::vector<int> identity(static_cast<size_t>(g.vertex_count()) + 1);
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(relabel_with_permutation(g, identity) == g);

  RandomSource rng(99);
  const WeightedGraph h = relabel_random(g, rng);
  CHECK(h.vertex_count() == g.vertex_count());
  CHECK(sorted_degrees(h) == sorted_degrees(g));
  CHECK(h.overlay_count() == g.overlay_count());
  CHECK(wasserstein1(dense_spectrum_of(h), dense_spectrum_of(g)) <= 1e-8);
}

TEST_CASE("jar composition follows the case") {
  const Jar jar1 = make_jar(0.75, 8, JarCase::CASE1);
  CHECK(jar1.red_count == 6);
  const Jar jar2 = make_jar(0.75, 8, JarCase::CASE2);
  CHECK(jar2.red_count == 2);
  CHECK_THROWS_AS(make_jar(0.6, 7, JarCase::CASE1), std::invalid_argument);
  CHECK_THROWS_AS(make_jar(0.4, 10, JarCase::CASE1), std::invalid_argument);
}

TEST_CASE("draw_marbles without replacement exhausts the jar") {
  const Jar jar = make_jar(0.75, 8, JarCase::CASE1);
  RandomSource rng(3);
  const std::vector<Marble> draws = draw_marbles(jar, 8, false, rng);
  const int reds = static_cast<int>(std::count(draws.begin(), draws.end(), Marble::RED));
  CHECK(reds == 6);
  CHECK_THROWS_AS(draw_marbles(jar, 9, false, rng), std::invalid_argument);
}

TEST_CASE("draw_marbles with replacement concentrates at alpha") {
  const Jar jar = make_jar(0.75, 8, JarCase::CASE1);
  RandomSource rng(4);
  const int64_t draws = 100000;
  const std::vector<Marble> sample = draw_marbles(jar, draws, true, rng);
  const double frac =
      static_cast<double>(std::count(sample.begin(), sample.end(), Marble::RED)) / draws;
  CHECK(std::fabs(frac - 0.75) <= 3.0 * std::sqrt(0.75 * 0.25 / draws));
}
