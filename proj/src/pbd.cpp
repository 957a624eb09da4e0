#include "drkofn/pbd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drkofn/util.hpp"

namespace drkofn {

void pbd_extend(PrefixPmf& f, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  double q = 1.0 - p;
  f.mass.push_back(0.0);
  for (std::size_t j = f.mass.size() - 1; j > 0; --j)
    f.mass[j] = f.mass[j - 1] * p + f.mass[j] * q;
  f.mass[0] *= q;
}

PrefixPmf pbd_pmf(std::span<const double> p) {
  PrefixPmf f;
  f.mass.reserve(p.size() + 1);
  for (double pi : p) pbd_extend(f, pi);
  return f;
}

double window_mass(const PrefixPmf& f, const Window& w) {
  if (w.empty()) return 0.0;
  int lo = std::max(0, static_cast<int>(std::ceil(w.lo)));
  int hi = std::min(f.count(), static_cast<int>(std::floor(w.hi)));
  KahanSum s;
  for (int j = lo; j <= hi; ++j) s.add(f.mass[static_cast<std::size_t>(j)]);
  return s.value();
}

Moments pbd_moments(std::span<const double> p) {
  KahanSum mean, var;
  for (double pi : p) {
    mean.add(pi);
    var.add(pi * (1.0 - pi));
  }
  return {mean.value(), var.value()};
}

double tv_distance(const PrefixPmf& a, const PrefixPmf& b) {
  std::size_t len = std::max(a.mass.size(), b.mass.size());
  KahanSum s;
  for (std::size_t j = 0; j < len; ++j) {
    double av = j < a.mass.size() ? a.mass[j] : 0.0;
    double bv = j < b.mass.size() ? b.mass[j] : 0.0;
    s.add(std::abs(av - bv));
  }
  return 0.5 * s.value();
}

std::vector<double> pbd_cdf(const PrefixPmf& f) {
  std::vector<double> out(f.mass.size());
  KahanSum s;
  for (std::size_t j = 0; j < f.mass.size(); ++j) {
    s.add(f.mass[j]);
    out[j] = s.value();
  }
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace drkofn
