#pragma once

#include <cstdint>
#include <vector>

namespace specden::lp {

enum class Rel { LE, GE, EQ };

// min c.x subject to rows[i] . x (rel_i) rhs[i], x >= 0.
struct Problem {
  int nvars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<Rel> rels;
};

enum class Status { OPTIMAL, INFEASIBLE, UNBOUNDED, ITER_LIMIT };

struct Solution {
  Status status = Status::ITER_LIMIT;
  double objective = 0.0;
  std::vector<double> x;
  int64_t pivots = 0;
};

// Two-phase dense-tableau simplex with Bland's rule (anti-cycling).
Solution solve(const Problem& p, int64_t max_pivots = 200000, double eps = 1e-9);

}  // namespace specden::lp
