#include "specden/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specden/errors.hpp"
#include "specden/simplex.hpp"

namespace specden {

ReconstructionResult solve_moment_lp(const MomentVector& target, double lo, double hi,
                                     int grid_size, std::vector<double> weights) {
  const int k = target.k();
  if (k < 1) throw std::invalid_argument("solve_moment_lp: empty moment vector");
  if (grid_size < k + 1) {
    throw std::invalid_argument("solve_moment_lp: grid size must be at least k+1");
  }
  if (!(lo < hi)) throw std::invalid_argument("solve_moment_lp: empty interval");
  if (weights.empty()) weights.assign(static_cast<size_t>(k), 1.0);
  if (static_cast<int>(weights.size()) != k) {
    throw std::invalid_argument("solve_moment_lp: weight count mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("solve_moment_lp: weights must be positive");
  }
  for (double mj : target.values) {
    if (!std::isfinite(mj)) throw std::invalid_argument("solve_moment_lp: non-finite moment");
  }

  std::vector<double> grid(static_cast<size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (grid_size - 1);
  }

  // Variables: q_0..q_{d-1}, then the slack t. Minimize t.
  lp::Problem prob;
  prob.nvars = grid_size + 1;
  prob.objective.assign(static_cast<size_t>(prob.nvars), 0.0);
  prob.objective.back() = 1.0;

  std::vector<double> ones(static_cast<size_t>(prob.nvars), 1.0);
  ones.back() = 0.0;
  prob.rows.push_back(ones);
  prob.rhs.push_back(1.0);
  prob.rels.push_back(lp::Rel::EQ);

  std::vector<std::vector<double>> powers(static_cast<size_t>(k),
                                          std::vector<double>(static_cast<size_t>(grid_size)));
  for (int i = 0; i < grid_size; ++i) {
    double pw = 1.0;
    for (int j = 0; j < k; ++j) {
      pw *= grid[static_cast<size_t>(i)];
      powers[static_cast<size_t>(j)][static_cast<size_t>(i)] = pw;
    }
  }
  for (int j = 0; j < k; ++j) {
    std::vector<double> row(static_cast<size_t>(prob.nvars), 0.0);
    for (int i = 0; i < grid_size; ++i) row[static_cast<size_t>(i)] = powers[static_cast<size_t>(j)][static_cast<size_t>(i)];
    row.back() = -weights[static_cast<size_t>(j)];
    prob.rows.push_back(row);
    prob.rhs.push_back(target.values[static_cast<size_t>(j)]);
    prob.rels.push_back(lp::Rel::LE);

    for (auto& v : row) v = -v;
    row.back() = -weights[static_cast<size_t>(j)];
    prob.rows.push_back(row);
    prob.rhs.push_back(-target.values[static_cast<size_t>(j)]);
    prob.rels.push_back(lp::Rel::LE);
  }

  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::OPTIMAL) {
    throw numerical_error("solve_moment_lp: simplex did not reach an optimum (status " +
                          std::to_string(static_cast<int>(sol.status)) + " after " +
                          std::to_string(sol.pivots) + " pivots, grid " +
                          std::to_string(grid_size) + ", k " + std::to_string(k) + ")");
  }

  std::vector<SpectralAtom> atoms;
  double total = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double q = sol.x[static_cast<size_t>(i)];
    if (q < -1e-9) throw numerical_error("solve_moment_lp: negative mass from simplex");
    if (q > 1e-14) {
      atoms.push_back({grid[static_cast<size_t>(i)], q});
      total += q;
    }
  }
  if (atoms.empty() || !(total > 0.0)) {
    throw numerical_error("solve_moment_lp: empty reconstruction");
  }
  for (auto& a : atoms) a.mass /= total;

  ReconstructionResult r;
  r.measure = SpectralMeasure::from_atoms(std::move(atoms), lo, hi);
  r.residual = sol.objective;
  r.lp_pivots = sol.pivots;
  r.grid_size = grid_size;
  return r;
}

double kv_bound(int k, double lo, double hi, double moment_l2_gap, double C) {
  if (k < 1) throw std::invalid_argument("kv_bound: k must be >= 1");
  const double width = hi - lo;
  return C * (width / static_cast<double>(k) +
              std::pow(3.0, k) * width * moment_l2_gap);
}

int default_grid_size(int k, double eps) {
  const int from_k = 4 * k + 1;
  const int from_eps = static_cast<int>(std::ceil(8.0 / eps));
  return std::max(from_k, from_eps);
}

SdeResult sde_pipeline(const WeightedGraph& g, double eps, RandomSource rng,
                       const SdeOptions& opts) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("sde_pipeline: eps must be in (0, 1/2)");
  }
  SdeResult out;
  out.k = static_cast<int>(std::ceil(opts.c / eps));
  out.delta_target = std::pow(2.0, -out.k) * eps;

  const double walks_needed =
      std::ceil(std::log(2.0 * out.k / 0.1) / (2.0 * out.delta_target * out.delta_target));
  const int64_t steps_per_walkset = static_cast<int64_t>(out.k) * (out.k + 1) / 2;
  out.steps_requested = static_cast<int64_t>(walks_needed) * steps_per_walkset;
  out.walks_per_moment = static_cast<int64_t>(walks_needed);
  if (out.steps_requested > opts.budget_cap_steps) {
    out.budget_limited = true;
    out.walks_per_moment = opts.budget_cap_steps / steps_per_walkset;
    if (out.walks_per_moment < 1) {
      throw budget_error("sde_pipeline: budget cap of " +
                         std::to_string(opts.budget_cap_steps) +
                         " steps cannot fund a single walk per moment (k=" +
                         std::to_string(out.k) + ")");
    }
  }
  out.steps_used = out.walks_per_moment * steps_per_walkset;
  out.delta_achieved = hoeffding_delta(out.k, out.walks_per_moment);

  out.moments = estimate_moments_walks(g, out.k, out.walks_per_moment, rng, opts.threads);
  const int grid = opts.grid_override.value_or(default_grid_size(out.k, eps));
  out.recon = solve_moment_lp(out.moments, -1.0, 1.0, grid);
  return out;
}

}  // namespace specden
