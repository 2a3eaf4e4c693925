#pragma once

#include <utility>
#include <vector>

#include "specden/measure.hpp"

namespace specden {

// Polynomial in the monomial basis, c[0] + c[1] x + ...
struct PolyCoeffs {
  std::vector<double> c;

  int degree() const;
  double eval(double x) const;
};

// Chebyshev polynomial of the first kind via the three-term recurrence.
PolyCoeffs chebyshev_T(int i);

// Stable evaluation by recurrence (no monomial expansion).
double chebyshev_eval(int i, double x);

// 1-Lipschitz witness g_ell: the antiderivative of T_{ell-1} with zero
// constant term, clipped to its endpoint values outside [-1, 1]. The
// monomial coefficients are exposed up to ell = 15 (2^ell coefficient
// growth makes the monomial basis useless beyond that); evaluation goes
// through the Chebyshev recurrence and has no cap.
class LipschitzWitness {
 public:
  explicit LipschitzWitness(int ell);

  double operator()(double x) const;
  int ell() const { return ell_; }

  // Empty above the monomial cap.
  const PolyCoeffs& monomial() const { return coeffs_; }
  double leading_coefficient() const { return leading_; }

 private:
  int ell_;
  double leading_;
  PolyCoeffs coeffs_;
  double f_at_zero_;
};

LipschitzWitness lipschitz_witness(int ell);

// The matched-moment hard pair built from cycle spectra: p is the density of
// two ell-cycles; q keeps the eigenvalues of the 2*ell-cycle that p does not
// contain. Both have (ell+1)/2 atoms, identical first ell-1 moments, and
// W1(p, q) = 2/ell.
std::pair<SpectralMeasure, SpectralMeasure> kv_pair(int ell);

struct LegBoundReport {
  double c = 0.0;        // 2^ell * |m_ell(p) - m_ell(q)|
  double bound = 0.0;    // c / (4*ell)
  double w1 = 0.0;
  double witness = 0.0;  // |integral of g_ell d(p - q)|
};

// Evaluates the Lipschitz-witness lower bound for a pair whose first ell-1
// moments agree (checked within 1e-10); throws if the bound or the witness
// value exceeds the computed W1.
LegBoundReport verify_leg_bound(const SpectralMeasure& p, const SpectralMeasure& q, int ell);

}  // namespace specden
