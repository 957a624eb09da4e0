#include "drkofn/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "drkofn/util.hpp"

namespace drkofn {

Permutation identity_permutation(int n) {
  Permutation perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

void validate(const Instance& inst) {
  if (inst.n <= 0) throw std::invalid_argument("n must be positive");
  if (inst.k < 1 || inst.k > inst.n) throw std::invalid_argument("k out of range");
  std::size_t n = static_cast<std::size_t>(inst.n);
  if (inst.cost.size() != n || inst.lo.size() != n || inst.hi.size() != n)
    throw std::invalid_argument("field lengths disagree with n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(inst.cost[i]) || inst.cost[i] < 0.0)
      throw std::invalid_argument("negative or non-finite cost at index " + std::to_string(i + 1));
    if (!std::isfinite(inst.lo[i]) || !std::isfinite(inst.hi[i]) || inst.lo[i] < 0.0 ||
        inst.hi[i] > 1.0)
      throw std::invalid_argument("probability out of [0,1] at index " + std::to_string(i + 1));
    if (inst.lo[i] > inst.hi[i])
      throw std::invalid_argument("interval inverted at index " + std::to_string(i + 1));
  }
}

void validate_permutation(const Permutation& perm, int n) {
  if (perm.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("order length disagrees with n");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : perm) {
    if (v < 0 || v >= n) throw std::invalid_argument("order entry out of range");
    if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("order repeats a test");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

double epsilon_bound(const Instance& inst) {
  double eps = 0.5;
  for (int i = 0; i < inst.n; ++i)
    eps = std::min(eps, std::min(inst.lo[static_cast<std::size_t>(i)],
                                 1.0 - inst.hi[static_cast<std::size_t>(i)]));
  return eps;
}

bool in_uncertainty_set(const Instance& inst, std::span<const double> p, double tol) {
  if (p.size() != static_cast<std::size_t>(inst.n)) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < inst.lo[i] - tol || p[i] > inst.hi[i] + tol) return false;
  return true;
}

ComplementReduced complement_reduce(const Instance& inst) {
  validate(inst);
  if (2 * inst.k <= inst.n) return {inst, false};
  Instance out = inst;
  out.k = inst.n - inst.k + 1;
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.n); ++i) {
    out.lo[i] = 1.0 - inst.hi[i];
    out.hi[i] = 1.0 - inst.lo[i];
  }
  return {out, true};
}

namespace {

// floor/ceil against the grid with a snap zone so regenerated grid values
// (z/g stored in doubles) land back on z instead of a neighboring cell.
double snap_floor(double y) {
  double r = std::round(y);
  if (std::abs(y - r) < 1e-6) return r;
  return std::floor(y);
}

double snap_ceil(double y) {
  double r = std::round(y);
  if (std::abs(y - r) < 1e-6) return r;
  return std::ceil(y);
}

}  // namespace

Instance round_to_grid(const Instance& inst) {
  validate(inst);
  double g = static_cast<double>(inst.n) * inst.n * inst.n;
  Instance out = inst;
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.n); ++i) {
    out.lo[i] = snap_floor(inst.lo[i] * g) / g;
    out.hi[i] = snap_ceil(inst.hi[i] * g) / g;
  }
  return out;
}

bool on_grid(const Instance& inst) {
  double g = static_cast<double>(inst.n) * inst.n * inst.n;
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.n); ++i) {
    for (double v : {inst.lo[i], inst.hi[i]}) {
      double y = v * g;
      if (std::abs(y - std::round(y)) >= 1e-6) return false;
    }
  }
  return true;
}

Window expected_value_window(const Instance& inst, const Permutation& perm, int nu) {
  validate(inst);
  validate_permutation(perm, inst.n);
  if (nu < 0 || nu > inst.n) throw std::invalid_argument("stage out of range");
  KahanSum lo, hi;
  for (int i = 0; i < nu; ++i) {
    std::size_t t = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]);
    lo.add(inst.lo[t]);
    hi.add(inst.hi[t]);
  }
  return {lo.value(), hi.value()};
}

}  // namespace drkofn
