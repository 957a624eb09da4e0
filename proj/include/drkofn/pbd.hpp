#pragma once

#include <span>
#include <vector>

#include "drkofn/windows.hpp"

namespace drkofn {

// Distribution of the pass count among the first count() independent
// Bernoulli trials.  mass[j] = Pr[exactly j passes].
struct PrefixPmf {
  std::vector<double> mass{1.0};

  int count() const { return static_cast<int>(mass.size()) - 1; }
};

// Exact pmf of the sum of independent Bernoulli(p_i), O(len^2) recurrence.
PrefixPmf pbd_pmf(std::span<const double> p);

// Extends f by one more Bernoulli(p) trial in place.
void pbd_extend(PrefixPmf& f, double p);

// Sum of mass[j] over integer j in w, compensated summation.  0 if empty.
double window_mass(const PrefixPmf& f, const Window& w);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// mean = sum p_i, variance = sum p_i (1 - p_i).
Moments pbd_moments(std::span<const double> p);

// Half the L1 distance; the shorter support is padded with zeros.
double tv_distance(const PrefixPmf& a, const PrefixPmf& b);

// cdf[j] = Pr[at most j passes]; last entry is 1 up to roundoff.
std::vector<double> pbd_cdf(const PrefixPmf& f);

// Standard normal cdf via erfc, accurate to ~1e-15.
double normal_cdf(double x);

}  // namespace drkofn
