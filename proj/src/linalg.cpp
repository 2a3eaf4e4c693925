#include "specden/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace specden {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matmul: size mismatch");
  const int n = x.n;
  DenseMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double v = x.at(i, k);
      if (v == 0.0) continue;
      const double* yrow = &y.a[static_cast<size_t>(k) * n];
      double* orow = &out.a[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) orow[j] += v * yrow[j];
    }
  }
  return out;
}

DenseMatrix subtract(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("subtract: size mismatch");
  DenseMatrix out(x.n);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

double trace(const DenseMatrix& x) {
  double t = 0.0;
  for (int i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

double max_asymmetry(const DenseMatrix& x) {
  double worst = 0.0;
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      worst = std::max(worst, std::fabs(x.at(i, j) - x.at(j, i)));
    }
  }
  return worst;
}

std::vector<double> dense_symmetric_eigenvalues(DenseMatrix m, double sym_tol,
                                                int size_guard) {
  const int n = m.n;
  if (n <= 0) throw std::invalid_argument("dense_symmetric_eigenvalues: empty matrix");
  if (n > size_guard) {
    throw std::invalid_argument("dense_symmetric_eigenvalues: size guard exceeded (n=" +
                                std::to_string(n) + ")");
  }
  if (max_asymmetry(m) > sym_tol) {
    throw std::invalid_argument("dense_symmetric_eigenvalues: input not symmetric");
  }
  // Work on the exact symmetrization.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m.at(i, j) + m.at(j, i));
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  if (n == 1) return {m.at(0, 0)};

  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return std::vector<double>(static_cast<size_t>(n), 0.0);

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::fabs(m.at(p, q));
    }
    if (off <= 1e-15 * scale * n) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::fabs(apq) <= 1e-18 * scale) {
          m.at(p, q) = 0.0;
          m.at(q, p) = 0.0;
          continue;
        }
        const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        double t;
        if (std::fabs(theta) > 1e12) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;

        m.at(p, p) -= h;
        m.at(q, q) += h;
        m.at(p, q) = 0.0;
        m.at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = m.at(r, p);
          const double arq = m.at(r, q);
          m.at(r, p) = arp - s * (arq + tau * arp);
          m.at(r, q) = arq + s * (arp - tau * arq);
          m.at(p, r) = m.at(r, p);
          m.at(q, r) = m.at(r, q);
        }
      }
    }
  }

  std::vector<double> eigs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eigs[static_cast<size_t>(i)] = m.at(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace specden
