#pragma once

#include <cstdint>
#include <vector>

namespace specden {

// Small dense row-major matrix; oracle-scale only.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static DenseMatrix identity(int n);
};

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix subtract(const DenseMatrix& x, const DenseMatrix& y);
double trace(const DenseMatrix& x);
double max_asymmetry(const DenseMatrix& x);

// All eigenvalues of a symmetric matrix, ascending, via cyclic Jacobi
// rotations. Input must be symmetric within sym_tol; n is capped by
// size_guard (oracle role only).
std::vector<double> dense_symmetric_eigenvalues(DenseMatrix m,
                                                double sym_tol = 1e-10,
                                                int size_guard = 8192);

}  // namespace specden
