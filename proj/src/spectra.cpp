#include "specden/spectra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace specden {

namespace {

void require_odd_ell(int ell, const char* who) {
  if (ell < 3 || ell % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": ell must be odd and >= 3, got " +
                                std::to_string(ell));
  }
}

// k-th cycle eigenvalue cos(2*pi*k/c). The expression shape is shared so that
// coinciding eigenvalues of R_ell and R_{2ell} are bitwise identical.
double cycle_eig(int k, int c) {
  return std::cos(2.0 * M_PI * static_cast<double>(k) / static_cast<double>(c));
}

// Ring-block atoms of the overlay instances: the spectrum of the disjoint
// cycles, halved, with one copy of the top eigenvalue removed, over a total
// of `denom` atoms.
void append_halved_ring_atoms(std::vector<SpectralAtom>& atoms, int cycle_len,
                              int64_t cycle_count, double denom) {
  for (int k = 1; k < (cycle_len + 1) / 2; ++k) {
    atoms.push_back({0.5 * cycle_eig(k, cycle_len),
                     2.0 * static_cast<double>(cycle_count) / denom});
  }
  if (cycle_len % 2 == 0) {
    atoms.push_back({-0.5, static_cast<double>(cycle_count) / denom});
  }
  if (cycle_count > 1) {
    atoms.push_back({0.5, static_cast<double>(cycle_count - 1) / denom});
  }
}

}  // namespace

SpectralMeasure cycle_spectrum(int ell) {
  require_odd_ell(ell, "cycle_spectrum");
  std::vector<SpectralAtom> atoms;
  const double denom = static_cast<double>(ell);
  for (int k = 1; k <= (ell - 1) / 2; ++k) {
    atoms.push_back({cycle_eig(k, ell), 2.0 / denom});
  }
  atoms.push_back({1.0, 1.0 / denom});
  return SpectralMeasure::from_atoms(std::move(atoms), -1.0, 1.0);
}

SpectralMeasure cycle_spectrum_even(int two_ell) {
  if (two_ell < 4 || two_ell % 2 != 0) {
    throw std::invalid_argument("cycle_spectrum_even: length must be even and >= 4, got " +
                                std::to_string(two_ell));
  }
  std::vector<SpectralAtom> atoms;
  const double denom = static_cast<double>(two_ell);
  for (int k = 1; k < two_ell / 2; ++k) {
    atoms.push_back({cycle_eig(k, two_ell), 2.0 / denom});
  }
  atoms.push_back({-1.0, 1.0 / denom});
  atoms.push_back({1.0, 1.0 / denom});
  return SpectralMeasure::from_atoms(std::move(atoms), -1.0, 1.0);
}

std::pair<SpectralMeasure, SpectralMeasure> mom_instance_spectrum(int ell, int64_t n) {
  require_odd_ell(ell, "mom_instance_spectrum");
  if (n < 1) throw std::invalid_argument("mom_instance_spectrum: n must be >= 1");
  const double denom = 4.0 * static_cast<double>(n) * ell;
  const double top_mass = (2.0 * static_cast<double>(n) * ell + 1.0) / denom;

  std::vector<SpectralAtom> a1;
  append_halved_ring_atoms(a1, ell, 2 * n, denom);
  a1.push_back({1.0, top_mass});

  std::vector<SpectralAtom> a2;
  append_halved_ring_atoms(a2, 2 * ell, n, denom);
  a2.push_back({1.0, top_mass});

  return {SpectralMeasure::from_atoms(std::move(a1), -1.0, 1.0),
          SpectralMeasure::from_atoms(std::move(a2), -1.0, 1.0)};
}

std::pair<SpectralMeasure, SpectralMeasure> rw_instance_spectrum(int ell, int64_t n) {
  require_odd_ell(ell, "rw_instance_spectrum");
  if (n < 1) throw std::invalid_argument("rw_instance_spectrum: n must be >= 1");
  const double denom = 2.0 * static_cast<double>(n) * ell;

  std::vector<SpectralAtom> a1;
  append_halved_ring_atoms(a1, ell, 2 * n, denom);
  a1.push_back({1.0, 1.0 / denom});

  std::vector<SpectralAtom> a2;
  append_halved_ring_atoms(a2, 2 * ell, n, denom);
  a2.push_back({1.0, 1.0 / denom});

  return {SpectralMeasure::from_atoms(std::move(a1), -1.0, 1.0),
          SpectralMeasure::from_atoms(std::move(a2), -1.0, 1.0)};
}

std::pair<SpectralMeasure, SpectralMeasure> mixture_spectrum(int ell, double alpha, int64_t n) {
  require_odd_ell(ell, "mixture_spectrum");
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("mixture_spectrum: alpha must be in (0.5, 1)");
  }
  const double an = alpha * static_cast<double>(n);
  const double bn = (1.0 - alpha) * static_cast<double>(n);
  if (std::fabs(an - std::llround(an)) > 1e-9 || std::fabs(bn - std::llround(bn)) > 1e-9) {
    throw std::invalid_argument("mixture_spectrum: alpha*n and (1-alpha)*n must be integers");
  }

  auto mixture = [&](double frac_long) {
    // frac_long = fraction of vertices living on 2*ell cycles.
    std::vector<SpectralAtom> atoms;
    const double dl = static_cast<double>(2 * ell);
    for (int k = 1; k < ell; ++k) atoms.push_back({cycle_eig(k, 2 * ell), frac_long * 2.0 / dl});
    atoms.push_back({-1.0, frac_long / dl});
    atoms.push_back({1.0, frac_long / dl});
    const double ds = static_cast<double>(ell);
    const double frac_short = 1.0 - frac_long;
    for (int k = 1; k <= (ell - 1) / 2; ++k) {
      atoms.push_back({cycle_eig(k, ell), frac_short * 2.0 / ds});
    }
    atoms.push_back({1.0, frac_short / ds});
    return SpectralMeasure::from_atoms(std::move(atoms), -1.0, 1.0);
  };
  return {mixture(alpha), mixture(1.0 - alpha)};
}

}  // namespace specden
