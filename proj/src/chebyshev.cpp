#include "specden/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "specden/moments.hpp"
#include "specden/spectra.hpp"

namespace specden {

namespace {

constexpr int kMonomialCap = 15;

// Antiderivative of T_{ell-1} evaluated by recurrence:
//   integral T_0 = T_1, integral T_1 = T_2 / 4,
//   integral T_n = (T_{n+1}/(n+1) - T_{n-1}/(n-1)) / 2 for n >= 2.
double antiderivative_eval(int ell, double x) {
  const int n = ell - 1;
  if (n == 0) return chebyshev_eval(1, x);
  if (n == 1) return chebyshev_eval(2, x) / 4.0;
  return 0.5 * (chebyshev_eval(n + 1, x) / (n + 1) - chebyshev_eval(n - 1, x) / (n - 1));
}

}  // namespace

int PolyCoeffs::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[static_cast<size_t>(i)] != 0.0) return i;
  }
  return 0;
}

double PolyCoeffs::eval(double x) const {
  double acc = 0.0;
  for (size_t i = c.size(); i > 0; --i) acc = acc * x + c[i - 1];
  return acc;
}

PolyCoeffs chebyshev_T(int i) {
  if (i < 0) throw std::invalid_argument("chebyshev_T: negative degree");
  PolyCoeffs prev{{1.0}};
  if (i == 0) return prev;
  PolyCoeffs cur{{0.0, 1.0}};
  for (int d = 2; d <= i; ++d) {
    PolyCoeffs next;
    next.c.assign(static_cast<size_t>(d) + 1, 0.0);
    for (size_t j = 0; j < cur.c.size(); ++j) next.c[j + 1] += 2.0 * cur.c[j];
    for (size_t j = 0; j < prev.c.size(); ++j) next.c[j] -= prev.c[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double chebyshev_eval(int i, double x) {
  if (i < 0) throw std::invalid_argument("chebyshev_eval: negative degree");
  if (i == 0) return 1.0;
  double tm = 1.0;
  double t = x;
  for (int d = 2; d <= i; ++d) {
    const double tn = 2.0 * x * t - tm;
    tm = t;
    t = tn;
  }
  return t;
}

LipschitzWitness::LipschitzWitness(int ell) : ell_(ell) {
  if (ell < 2) throw std::invalid_argument("lipschitz_witness: ell must be >= 2");
  leading_ = std::pow(2.0, ell - 2) / static_cast<double>(ell);
  f_at_zero_ = antiderivative_eval(ell, 0.0);
  if (ell <= kMonomialCap) {
    const PolyCoeffs t = chebyshev_T(ell - 1);
    coeffs_.c.assign(t.c.size() + 1, 0.0);
    for (size_t j = 0; j < t.c.size(); ++j) {
      coeffs_.c[j + 1] = t.c[j] / static_cast<double>(j + 1);
    }
  }
}

double LipschitzWitness::operator()(double x) const {
  if (x < -1.0) x = -1.0;
  if (x > 1.0) x = 1.0;
  return antiderivative_eval(ell_, x) - f_at_zero_;
}

LipschitzWitness lipschitz_witness(int ell) { return LipschitzWitness(ell); }

std::pair<SpectralMeasure, SpectralMeasure> kv_pair(int ell) {
  if (ell < 3 || ell % 2 == 0) {
    throw std::invalid_argument("kv_pair: ell must be odd and >= 3");
  }
  const SpectralMeasure p = cycle_spectrum(ell);

  // q keeps the odd-index eigenvalues of the 2*ell cycle plus -1; these are
  // exactly the ones missing from p.
  std::vector<SpectralAtom> q_atoms;
  const double denom = static_cast<double>(ell);
  for (int k = 1; k < ell; k += 2) {
    q_atoms.push_back({std::cos(2.0 * M_PI * static_cast<double>(k) / (2.0 * ell)), 2.0 / denom});
  }
  q_atoms.push_back({-1.0, 1.0 / denom});
  return {p, SpectralMeasure::from_atoms(std::move(q_atoms), -1.0, 1.0)};
}

LegBoundReport verify_leg_bound(const SpectralMeasure& p, const SpectralMeasure& q, int ell) {
  if (ell < 2) throw std::invalid_argument("verify_leg_bound: ell must be >= 2");
  const MomentVector mp = exact_moments(p, ell);
  const MomentVector mq = exact_moments(q, ell);
  for (int j = 1; j < ell; ++j) {
    if (std::fabs(mp.moment(j) - mq.moment(j)) > 1e-10) {
      throw std::invalid_argument("verify_leg_bound: moment " + std::to_string(j) +
                                  " of the inputs differs; first ell-1 moments must agree");
    }
  }

  LegBoundReport r;
  const double gap = std::fabs(mp.moment(ell) - mq.moment(ell));
  r.c = std::pow(2.0, ell) * gap;
  r.bound = r.c / (4.0 * static_cast<double>(ell));
  r.w1 = wasserstein1(p, q);

  const LipschitzWitness g(ell);
  double integral = 0.0;
  for (const auto& a : p.atoms()) integral += a.mass * g(a.value);
  for (const auto& a : q.atoms()) integral -= a.mass * g(a.value);
  r.witness = std::fabs(integral);

  if (r.witness > r.w1 + 1e-10) {
    throw std::logic_error("verify_leg_bound: witness value exceeds W1");
  }
  if (r.bound > r.w1 + 1e-10) {
    throw std::logic_error("verify_leg_bound: bound exceeds W1");
  }
  return r;
}

}  // namespace specden
