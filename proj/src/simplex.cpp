#include "specden/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specden::lp {

namespace {

struct Tableau {
  int m = 0;
  int ncols = 0;  // without the rhs column
  std::vector<std::vector<double>> t;
  std::vector<int> basis;

  double& at(int i, int j) { return t[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  double rhs(int i) const { return t[static_cast<size_t>(i)][static_cast<size_t>(ncols)]; }

  void pivot(int r, int c) {
    auto& prow = t[static_cast<size_t>(r)];
    const double inv = 1.0 / prow[static_cast<size_t>(c)];
    for (auto& v : prow) v *= inv;
    prow[static_cast<size_t>(c)] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      auto& row = t[static_cast<size_t>(i)];
      const double f = row[static_cast<size_t>(c)];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) row[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
      row[static_cast<size_t>(c)] = 0.0;
      // Snap numerically-degenerate basics to exact zero so Bland's
      // tie-breaking sees the tie (rows are equilibrated to unit scale).
      if (std::fabs(row[static_cast<size_t>(ncols)]) < 1e-11) row[static_cast<size_t>(ncols)] = 0.0;
    }
    basis[static_cast<size_t>(r)] = c;
  }
};

// Minimizes cost over the current tableau with Bland's rule. `limit_col`
// restricts entering columns to indices below it (used to keep artificials
// out in phase 2).
Status run_phase(Tableau& tb, const std::vector<double>& cost, int limit_col,
                 int64_t max_pivots, int64_t& pivots, double eps) {
  const int m = tb.m;
  while (true) {
    // Reduced costs d_j = c_j - c_B . T_j, scanned in index order.
    std::vector<double> cb(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) cb[static_cast<size_t>(i)] = cost[static_cast<size_t>(tb.basis[static_cast<size_t>(i)])];
    int enter = -1;
    for (int j = 0; j < limit_col && enter < 0; ++j) {
      double d = cost[static_cast<size_t>(j)];
      for (int i = 0; i < m; ++i) {
        if (cb[static_cast<size_t>(i)] != 0.0) d -= cb[static_cast<size_t>(i)] * tb.at(i, j);
      }
      if (d < -eps) enter = j;
    }
    if (enter < 0) return Status::OPTIMAL;

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = tb.at(i, enter);
      if (a > eps) {
        const double ratio = tb.rhs(i) / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && tb.basis[static_cast<size_t>(i)] < tb.basis[static_cast<size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return Status::UNBOUNDED;

    tb.pivot(leave, enter);
    if (++pivots > max_pivots) return Status::ITER_LIMIT;
  }
}

}  // namespace

Solution solve(const Problem& p, int64_t max_pivots, double eps) {
  const int m = static_cast<int>(p.rows.size());
  const int n = p.nvars;
  if (static_cast<int>(p.objective.size()) != n) {
    throw std::invalid_argument("lp::solve: objective size mismatch");
  }
  if (p.rhs.size() != p.rows.size() || p.rels.size() != p.rows.size()) {
    throw std::invalid_argument("lp::solve: row/rhs/rel size mismatch");
  }

  int n_slack = 0;
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    const Rel rel = p.rels[static_cast<size_t>(i)];
    const bool flip = p.rhs[static_cast<size_t>(i)] < 0.0;
    const Rel eff = !flip ? rel
                          : (rel == Rel::LE ? Rel::GE : (rel == Rel::GE ? Rel::LE : Rel::EQ));
    if (eff != Rel::EQ) ++n_slack;
    if (eff != Rel::LE) ++n_art;
  }
  const int art_base = n + n_slack;
  const int ncols = n + n_slack + n_art;

  Tableau tb;
  tb.m = m;
  tb.ncols = ncols;
  tb.t.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(ncols) + 1, 0.0));
  tb.basis.assign(static_cast<size_t>(m), -1);

  int scol = n;
  int acol = art_base;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(p.rows[static_cast<size_t>(i)].size()) != n) {
      throw std::invalid_argument("lp::solve: row width mismatch");
    }
    // Equilibrate: scale each row to unit max coefficient (same feasible set,
    // much better pivot conditioning for moment constraints).
    double scale = std::fabs(p.rhs[static_cast<size_t>(i)]);
    for (double v : p.rows[static_cast<size_t>(i)]) scale = std::max(scale, std::fabs(v));
    if (!(scale > 0.0)) scale = 1.0;
    const bool flip = p.rhs[static_cast<size_t>(i)] < 0.0;
    const double sgn = (flip ? -1.0 : 1.0) / scale;
    Rel rel = p.rels[static_cast<size_t>(i)];
    if (flip) rel = rel == Rel::LE ? Rel::GE : (rel == Rel::GE ? Rel::LE : Rel::EQ);
    for (int j = 0; j < n; ++j) tb.at(i, j) = sgn * p.rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    tb.at(i, ncols) = sgn * p.rhs[static_cast<size_t>(i)];
    if (rel == Rel::LE) {
      tb.at(i, scol) = 1.0;
      tb.basis[static_cast<size_t>(i)] = scol++;
    } else if (rel == Rel::GE) {
      tb.at(i, scol++) = -1.0;
      tb.at(i, acol) = 1.0;
      tb.basis[static_cast<size_t>(i)] = acol++;
    } else {
      tb.at(i, acol) = 1.0;
      tb.basis[static_cast<size_t>(i)] = acol++;
    }
  }

  Solution sol;
  if (n_art > 0) {
    std::vector<double> cost1(static_cast<size_t>(ncols), 0.0);
    for (int j = art_base; j < ncols; ++j) cost1[static_cast<size_t>(j)] = 1.0;
    const Status s1 = run_phase(tb, cost1, ncols, max_pivots, sol.pivots, eps);
    if (s1 == Status::ITER_LIMIT) {
      sol.status = s1;
      return sol;
    }
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tb.basis[static_cast<size_t>(i)] >= art_base) art_sum += tb.rhs(i);
    }
    if (s1 == Status::UNBOUNDED || art_sum > 1e-7) {
      sol.status = Status::INFEASIBLE;
      return sol;
    }
    // Pivot lingering zero-valued artificials out where possible.
    for (int i = 0; i < m; ++i) {
      if (tb.basis[static_cast<size_t>(i)] < art_base) continue;
      for (int j = 0; j < art_base; ++j) {
        if (std::fabs(tb.at(i, j)) > eps) {
          tb.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> cost2(static_cast<size_t>(ncols), 0.0);
  for (int j = 0; j < n; ++j) cost2[static_cast<size_t>(j)] = p.objective[static_cast<size_t>(j)];
  const Status s2 = run_phase(tb, cost2, art_base, max_pivots, sol.pivots, eps);
  sol.status = s2;
  if (s2 != Status::OPTIMAL) return sol;

  sol.x.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    const int b = tb.basis[static_cast<size_t>(i)];
    if (b < n) sol.x[static_cast<size_t>(b)] = tb.rhs(i);
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += p.objective[static_cast<size_t>(j)] * sol.x[static_cast<size_t>(j)];
  return sol;
}

}  // namespace specden::lp
