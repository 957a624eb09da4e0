#pragma once

#include <span>
#include <vector>

#include "drkofn/windows.hpp"

namespace drkofn {

// k-of-n testing task with per-test cost and a probability box [lo_i, hi_i]
// for each test's unknown pass rate.
struct Instance {
  int n = 0;
  int k = 0;
  std::vector<double> cost;
  std::vector<double> lo;
  std::vector<double> hi;
};

// 0-based test indices; the CLI converts from/to 1-based.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);

// Throws std::invalid_argument naming the first violated invariant:
// k out of range, size mismatch, inverted or out-of-range interval,
// negative or non-finite cost.
void validate(const Instance& inst);

// Throws std::invalid_argument unless perm is a bijection on {0..n-1}.
void validate_permutation(const Permutation& perm, int n);

// Largest eps with every interval inside [eps, 1-eps].
double epsilon_bound(const Instance& inst);

// True iff lo_i - tol <= p_i <= hi_i + tol for all i.
bool in_uncertainty_set(const Instance& inst, std::span<const double> p, double tol = 1e-12);

struct ComplementReduced {
  Instance instance;
  bool complemented = false;
};

// Maps a k > n/2 instance to the equivalent (n-k+1)-of-n instance over
// flipped outcomes: intervals become [1-hi_i, 1-lo_i], costs stay.  A run of
// the reduced instance at 1-p costs exactly what the original costs at p.
// Instances with k <= n/2 pass through unchanged.
ComplementReduced complement_reduce(const Instance& inst);

// Rounds lo_i down and hi_i up to multiples of 1/n^3, so intervals only
// widen and each endpoint moves by less than 1/n^3.
Instance round_to_grid(const Instance& inst);

// True iff every endpoint already sits on the 1/n^3 grid.
bool on_grid(const Instance& inst);

// Attainable range of the expected pass count after the first nu tests of
// perm: [sum of lo, sum of hi] over the prefix.
Window expected_value_window(const Instance& inst, const Permutation& perm, int nu);

}  // namespace drkofn
