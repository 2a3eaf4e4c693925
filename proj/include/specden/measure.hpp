#pragma once

#include <string>
#include <vector>

namespace specden {

struct SpectralAtom {
  double value = 0.0;
  double mass = 0.0;
};

// Finite probability measure on a declared interval, stored as sorted atoms.
// Masses must sum to 1 within 1e-12.
class SpectralMeasure {
 public:
  SpectralMeasure() = default;

  static SpectralMeasure from_atoms(std::vector<SpectralAtom> atoms, double lo, double hi);

  // Uniform mass 1/n on each listed value; equal values are combined.
  static SpectralMeasure from_values(std::vector<double> values, double lo, double hi);

  static SpectralMeasure point_mass(double x, double lo, double hi);

  const std::vector<SpectralAtom>& atoms() const { return atoms_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  size_t size() const { return atoms_.size(); }
  double total_mass() const;

  // Combines atoms whose values are within tol of their neighbor
  // (mass-weighted value), for comparing float spectra with multiplicity.
  SpectralMeasure merged(double tol) const;

  bool operator==(const SpectralMeasure& other) const {
    return lo_ == other.lo_ && hi_ == other.hi_ && atoms_.size() == other.atoms_.size() &&
           [&] {
             for (size_t i = 0; i < atoms_.size(); ++i) {
               if (atoms_[i].value != other.atoms_[i].value ||
                   atoms_[i].mass != other.atoms_[i].mass) {
                 return false;
               }
             }
             return true;
           }();
  }

 private:
  std::vector<SpectralAtom> atoms_;
  double lo_ = -1.0;
  double hi_ = 1.0;
};

// Exact W1 between two normalized atomic measures: the integral of the
// absolute CDF difference over the merged support.
double wasserstein1(const SpectralMeasure& p, const SpectralMeasure& q);

// Sorted-eigenvalue form: (1/n) * ||l1 - l2||_1 for equal-length sorted lists.
double wasserstein1_eigs(const std::vector<double>& l1, const std::vector<double>& l2);

// CSV with header "value,mass", rows ascending, full-precision decimals.
void write_measure_csv(const std::string& path, const SpectralMeasure& m);
SpectralMeasure read_measure_csv(const std::string& path);

}  // namespace specden
