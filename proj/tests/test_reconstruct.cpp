#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "specden/chebyshev.hpp"
#include "specden/errors.hpp"
#include "specden/graph.hpp"
#include "specden/linalg.hpp"
#include "specden/measure.hpp"
#include "specden/moments.hpp"
#include "specden/random.hpp"
#include "specden/reconstruct.hpp"
#include "specden/simplex.hpp"

using namespace specden;

namespace {

WeightedGraph cycle_graph(int len) {
  std::vector<Edge> edges;
  for (int i = 1; i < len; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({len, 1, 1.0});
  return build_graph(len, std::move(edges));
}

MomentVector make_moments(std::vector<double> values) {
  MomentVector m;
  m.values = std::move(values);
  return m;
}

// Max weighted moment deviation of a measure from a target (the LP objective).
double residual_of(const SpectralMeasure& q, const MomentVector& target) {
  const MomentVector mq = exact_moments(q, target.k());
  double worst = 0.0;
  for (int j = 1; j <= target.k(); ++j) {
    worst = std::max(worst, std::fabs(mq.moment(j) - target.moment(j)));
  }
  return worst;
}

}  // namespace

TEST_CASE("simplex solves and classifies small programs") {
  {
    // min -x - y st x + 2y <= 4, 3x + y <= 6: optimum at (1.6, 1.2)
    lp::Problem p;
    p.nvars = 2;
    p.objective = {-1.0, -1.0};
    p.rows = {{1.0, 2.0}, {3.0, 1.0}};
    p.rhs = {4.0, 6.0};
    p.rels = {lp::Rel::LE, lp::Rel::LE};
    const lp::Solution s = lp::solve(p);
    REQUIRE(s.status == lp::Status::OPTIMAL);
    CHECK(s.x[0] == doctest::Approx(1.6));
    CHECK(s.x[1] == doctest::Approx(1.2));
    CHECK(s.objective == doctest::Approx(-2.8));
  }
  {
    lp::Problem p;  // infeasible: x >= 2, x <= 1
    p.nvars = 1;
    p.objective = {1.0};
    p.rows = {{1.0}, {1.0}};
    p.rhs = {2.0, 1.0};
    p.rels = {lp::Rel::GE, lp::Rel::LE};
    CHECK(lp::solve(p).status == lp::Status::INFEASIBLE);
  }
  {
    lp::Problem p;  // unbounded: min -x with only x >= 1
    p.nvars = 1;
    p.objective = {-1.0};
    p.rows = {{1.0}};
    p.rhs = {1.0};
    p.rels = {lp::Rel::GE};
    CHECK(lp::solve(p).status == lp::Status::UNBOUNDED);
  }
  {
    lp::Problem p;  // equality: min x + y st x + y = 1
    p.nvars = 2;
    p.objective = {1.0, 1.0};
    p.rows = {{1.0, 1.0}};
    p.rhs = {1.0};
    p.rels = {lp::Rel::EQ};
    const lp::Solution s = lp::solve(p);
    REQUIRE(s.status == lp::Status::OPTIMAL);
    CHECK(s.objective == doctest::Approx(1.0));
  }
}

TEST_CASE("zero moments force a point mass at the origin") {
  const ReconstructionResult r = solve_moment_lp(make_moments({0.0, 0.0, 0.0, 0.0}), -1.0, 1.0, 17);
  CHECK(r.residual <= 1e-9);
  CHECK(wasserstein1(r.measure, SpectralMeasure::point_mass(0.0, -1.0, 1.0)) <= 1e-9);
}

TEST_CASE("unit even moments force balanced endpoint masses") {
  const ReconstructionResult r = solve_moment_lp(make_moments({0.0, 1.0, 0.0, 1.0}), -1.0, 1.0, 17);
  CHECK(r.residual <= 1e-9);
  const SpectralMeasure target =
      SpectralMeasure::from_atoms({{-1.0, 0.5}, {1.0, 0.5}}, -1.0, 1.0);
  CHECK(wasserstein1(r.measure, target) <= 1e-9);
}

TEST_CASE("four matched moments reconstruct the cycle pair within the k-term bound") {
  const auto [p, q] = kv_pair(5);
  const ReconstructionResult r = solve_moment_lp(exact_moments(p, 4), -1.0, 1.0, 17);
  const double w1 = wasserstein1(r.measure, p);
  CHECK(w1 <= kv_bound(4, -1.0, 1.0, 0.0, 1.0));  // = 0.5
  (void)q;
}

TEST_CASE("grid-supported measures are recovered with zero residual") {
  RandomSource rng(2024);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 17;
    std::vector<SpectralAtom> atoms;
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      const int cell = static_cast<int>(rng.next_below(d));
      const double x = -1.0 + 2.0 * cell / (d - 1);
      const double mass = 0.1 + rng.next_double();
      atoms.push_back({x, mass});
      total += mass;
    }
    for (auto& a : atoms) a.mass /= total;
    double sum = 0.0;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) sum += atoms[i].mass;
    atoms.back().mass = 1.0 - sum;
    const SpectralMeasure truth = SpectralMeasure::from_atoms(std::move(atoms), -1.0, 1.0);
    const ReconstructionResult r = solve_moment_lp(exact_moments(truth, 8), -1.0, 1.0, d);
    CHECK(r.residual <= 1e-9);
  }
}

TEST_CASE("LP beats the uniform-grid distribution and is monotone under refinement") {
  // Noisy target so the optimum residual is strictly positive.
  const auto [p, q] = kv_pair(7);
  MomentVector target = exact_moments(p, 6);
  RandomSource rng(7);
  for (auto& v : target.values) v += 0.1 * (rng.next_double() - 0.5);
  (void)q;

  double prev = 1e300;
  for (int d : {9, 17, 33}) {
    const ReconstructionResult r = solve_moment_lp(target, -1.0, 1.0, d);
    // sanity upper bound: the uniform distribution over the same grid
    std::vector<SpectralAtom> uniform_atoms;
    for (int i = 0; i < d; ++i) {
      uniform_atoms.push_back({-1.0 + 2.0 * i / (d - 1), 1.0 / d});
    }
    const SpectralMeasure uniform = SpectralMeasure::from_atoms(std::move(uniform_atoms), -1.0, 1.0);
    CHECK(r.residual <= residual_of(uniform, target) + 1e-12);
    CHECK(r.residual <= prev + 1e-12);  // nested grids only improve
    CHECK(std::fabs(r.measure.total_mass() - 1.0) <= 1e-9);
    prev = r.residual;
  }
}

TEST_CASE("reconstruction error stays under the moment-count bound on random measures") {
  RandomSource rng(4242);
  const int k = 6;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<SpectralAtom> atoms;
    const int na = 2 + static_cast<int>(rng.next_below(5));
    double total = 0.0;
    for (int i = 0; i < na; ++i) {
      atoms.push_back({2.0 * rng.next_double() - 1.0, 0.1 + rng.next_double()});
      total += atoms.back().mass;
    }
    for (auto& a : atoms) a.mass /= total;
    double sum = 0.0;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) sum += atoms[i].mass;
    atoms.back().mass = 1.0 - sum;
    const SpectralMeasure truth = SpectralMeasure::from_atoms(std::move(atoms), -1.0, 1.0);

    const int d = 4 * k + 1;
    const ReconstructionResult r = solve_moment_lp(exact_moments(truth, k), -1.0, 1.0, d);
    const double grid_spacing = 2.0 / (d - 1);
    const double gap = std::sqrt(static_cast<double>(k)) * r.residual;
    CHECK(wasserstein1(r.measure, truth) <= kv_bound(k, -1.0, 1.0, gap, 1.0) + grid_spacing);
  }
}

TEST_CASE("kv_bound arithmetic") {
  CHECK(kv_bound(10, -1.0, 1.0, 0.0, 1.0) == doctest::Approx(0.2));
  CHECK(kv_bound(4, -1.0, 1.0, 0.01, 1.0) == doctest::Approx(2.12));
  for (int ell : {5, 9}) {
    CHECK(kv_bound(ell - 1, -1.0, 1.0, 0.0, 1.0) == doctest::Approx(2.0 / (ell - 1)));
  }
}

TEST_CASE("solve_moment_lp validates inputs") {
  CHECK_THROWS_AS(solve_moment_lp(make_moments({0.0, 0.0}), -1.0, 1.0, 2),
                  std::invalid_argument);  // grid < k+1
  CHECK_THROWS_AS(solve_moment_lp(make_moments({0.0}), 1.0, -1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(solve_moment_lp(make_moments({0.0}), -1.0, 1.0, 5, {0.0}),
                  std::invalid_argument);
}

TEST_CASE("sde_pipeline on a pure self-loop graph is exact") {
  const WeightedGraph loops = build_graph(3, {{1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}});
  const SdeResult res = sde_pipeline(loops, 0.2, RandomSource(1));
  CHECK(res.recon.residual <= 1e-9);
  CHECK(wasserstein1(res.recon.measure, SpectralMeasure::point_mass(1.0, -1.0, 1.0)) <= 1e-9);
}

TEST_CASE("sde_pipeline approximates the long cycle") {
  const WeightedGraph r200 = cycle_graph(200);
  const SpectralMeasure truth = SpectralMeasure::from_values(
      dense_symmetric_eigenvalues(dense_normalized_adjacency(r200)), -1.0, 1.0);
  const SdeResult res = sde_pipeline(r200, 0.25, RandomSource(9));
  CHECK(res.k == 8);
  CHECK(res.budget_limited);  // the Hoeffding request exceeds the default cap
  CHECK(res.steps_used <= 20000000);
  CHECK(wasserstein1(res.recon.measure, truth) <= 0.25);
}

TEST_CASE("doubling the walk budget does not hurt the median error") {
  const WeightedGraph r60 = cycle_graph(60);
  const SpectralMeasure truth = SpectralMeasure::from_values(
      dense_symmetric_eigenvalues(dense_normalized_adjacency(r60)), -1.0, 1.0);
  auto median_w1 = [&](int64_t cap) {
    std::vector<double> errs;
    for (int s = 0; s < 20; ++s) {
      SdeOptions opts;
      opts.budget_cap_steps = cap;
      const SdeResult res = sde_pipeline(r60, 0.25, RandomSource(400, s), opts);
      errs.push_back(wasserstein1(res.recon.measure, truth));
    }
    std::sort(errs.begin(), errs.end());
    return 0.5 * (errs[9] + errs[10]);
  };
  const double base = median_w1(1000000);
  const double doubled = median_w1(2000000);
  CHECK(doubled <= base + 0.01);
}

TEST_CASE("sde_pipeline guards its domain and budget") {
  const WeightedGraph r10 = cycle_graph(10);
  CHECK_THROWS_AS(sde_pipeline(r10, 0.7, RandomSource(0)), std::invalid_argument);
  SdeOptions opts;
  opts.budget_cap_steps = 10;  // cannot fund one walk per moment
  CHECK_THROWS_AS(sde_pipeline(r10, 0.2, RandomSource(0), opts), budget_error);
}
