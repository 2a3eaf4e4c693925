#include "specden/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "specden/errors.hpp"

namespace specden {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kRangeTol = 1e-9;

}  // namespace

SpectralMeasure SpectralMeasure::from_atoms(std::vector<SpectralAtom> atoms, double lo,
                                            double hi) {
  if (!(lo < hi)) throw std::invalid_argument("SpectralMeasure: empty interval");
  if (atoms.empty()) throw std::invalid_argument("SpectralMeasure: no atoms");
  std::sort(atoms.begin(), atoms.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) { return a.value < b.value; });
  std::vector<SpectralAtom> combined;
  combined.reserve(atoms.size());
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!(a.mass > 0.0)) {
      if (a.mass == 0.0) continue;
      throw std::invalid_argument("SpectralMeasure: negative mass");
    }
    if (a.value < lo - kRangeTol || a.value > hi + kRangeTol) {
      throw std::invalid_argument("SpectralMeasure: atom outside declared interval");
    }
    if (!combined.empty() && combined.back().value == a.value) {
      combined.back().mass += a.mass;
    } else {
      combined.push_back(a);
    }
    total += a.mass;
  }
  if (std::fabs(total - 1.0) > kMassTol) {
    throw std::invalid_argument("SpectralMeasure: masses sum to " + std::to_string(total) +
                                ", not 1");
  }
  SpectralMeasure m;
  m.atoms_ = std::move(combined);
  m.lo_ = lo;
  m.hi_ = hi;
  return m;
}

SpectralMeasure SpectralMeasure::from_values(std::vector<double> values, double lo, double hi) {
  if (values.empty()) throw std::invalid_argument("SpectralMeasure: no values");
  const double w = 1.0 / static_cast<double>(values.size());
  std::vector<SpectralAtom> atoms;
  atoms.reserve(values.size());
  for (double v : values) atoms.push_back({v, w});
  return from_atoms(std::move(atoms), lo, hi);
}

SpectralMeasure SpectralMeasure::point_mass(double x, double lo, double hi) {
  return from_atoms({{x, 1.0}}, lo, hi);
}

double SpectralMeasure::total_mass() const {
  double t = 0.0;
  for (const auto& a : atoms_) t += a.mass;
  return t;
}

SpectralMeasure SpectralMeasure::merged(double tol) const {
  std::vector<SpectralAtom> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!out.empty() && a.value - out.back().value <= tol) {
      auto& b = out.back();
      const double mass = b.mass + a.mass;
      b.value = (b.value * b.mass + a.value * a.mass) / mass;
      b.mass = mass;
    } else {
      out.push_back(a);
    }
  }
  return from_atoms(std::move(out), lo_, hi_);
}

double wasserstein1(const SpectralMeasure& p, const SpectralMeasure& q) {
  if (std::fabs(p.total_mass() - 1.0) > 1e-9 || std::fabs(q.total_mass() - 1.0) > 1e-9) {
    throw std::invalid_argument("wasserstein1: unnormalized input");
  }
  const auto& pa = p.atoms();
  const auto& qa = q.atoms();
  size_t i = 0;
  size_t j = 0;
  double fp = 0.0;
  double fq = 0.0;
  double prev = 0.0;
  bool started = false;
  double w1 = 0.0;
  while (i < pa.size() || j < qa.size()) {
    double x;
    if (j >= qa.size() || (i < pa.size() && pa[i].value <= qa[j].value)) {
      x = pa[i].value;
    } else {
      x = qa[j].value;
    }
    if (started) w1 += std::fabs(fp - fq) * (x - prev);
    while (i < pa.size() && pa[i].value == x) fp += pa[i++].mass;
    while (j < qa.size() && qa[j].value == x) fq += qa[j++].mass;
    prev = x;
    started = true;
  }
  return w1;
}

double wasserstein1_eigs(const std::vector<double>& l1, const std::vector<double>& l2) {
  if (l1.size() != l2.size()) {
    throw std::invalid_argument("wasserstein1_eigs: length mismatch");
  }
  if (l1.empty()) throw std::invalid_argument("wasserstein1_eigs: empty lists");
  double sum = 0.0;
  for (size_t i = 0; i < l1.size(); ++i) sum += std::fabs(l1[i] - l2[i]);
  return sum / static_cast<double>(l1.size());
}

void write_measure_csv(const std::string& path, const SpectralMeasure& m) {
  std::ofstream out(path);
  if (!out) throw io_error("write_measure_csv: cannot open " + path);
  out << "value,mass\n";
  char buf[128];
  for (const auto& a : m.atoms()) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", a.value, a.mass);
    out << buf;
  }
  if (!out) throw io_error("write_measure_csv: write failed for " + path);
}

SpectralMeasure read_measure_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_measure_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("value,mass", 0) != 0) {
    throw io_error("read_measure_csv: missing header in " + path);
  }
  std::vector<SpectralAtom> atoms;
  double lo = 0.0;
  double hi = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    SpectralAtom a;
    if (!(ls >> a.value >> a.mass)) throw io_error("read_measure_csv: malformed row");
    atoms.push_back(a);
  }
  if (atoms.empty()) throw io_error("read_measure_csv: no atoms in " + path);
  lo = atoms.front().value;
  hi = atoms.back().value;
  // Declared interval is the smallest canonical one covering the support.
  if (lo >= -1.0 && hi <= 1.0) {
    lo = -1.0;
    hi = 1.0;
  } else if (lo >= -2.0 && hi <= 2.0) {
    lo = -2.0;
    hi = 2.0;
  }
  if (!(lo < hi)) {
    lo -= 1.0;
    hi += 1.0;
  }
  try {
    return SpectralMeasure::from_atoms(std::move(atoms), lo, hi);
  } catch (const std::invalid_argument& ex) {
    throw io_error(std::string("read_measure_csv: ") + ex.what());
  }
}

}  // namespace specden
