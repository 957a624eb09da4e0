#pragma once

#include <cassert>

namespace drkofn {

// Closed interval; empty iff lo > hi.  Stage windows carry exact integer
// endpoints in the double fields; expected-value windows are genuinely real.
struct Window {
  double lo = 0.0;
  double hi = -1.0;

  bool empty() const { return lo > hi; }
  bool contains(double x, double tol = 0.0) const {
    return !empty() && x >= lo - tol && x <= hi + tol;
  }
};

// Pass counts after nu of n tests that leave a k-of-n run undecided: fewer
// than k passes so far and fewer than n-k+1 fails.  Empty at nu = n.
inline Window non_stopping_window(int nu, int n, int k) {
  assert(0 <= nu && nu <= n && 1 <= k && k <= n);
  int lo = nu - n + k;
  if (lo < 0) lo = 0;
  return {static_cast<double>(lo), static_cast<double>(k - 1)};
}

// Widened window used by the adversary analysis: [0, k-1] over the first half
// of the stages, [(nu-n+k-1)^+, k] from the midpoint on.  The half split
// compares 2*nu against n so odd n needs no rounding convention.
inline Window modified_window(int nu, int n, int k) {
  assert(0 <= nu && nu <= n && 1 <= k && k <= n);
  if (2 * nu < n) return {0.0, static_cast<double>(k - 1)};
  int lo = nu - n + k - 1;
  if (lo < 0) lo = 0;
  return {static_cast<double>(lo), static_cast<double>(k)};
}

}  // namespace drkofn
