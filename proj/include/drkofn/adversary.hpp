#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "drkofn/cost.hpp"
#include "drkofn/instance.hpp"

namespace drkofn {

enum class AdvMethod { Brute, AdvBar, Approx, Qptas };

// Relation of the full-horizon expected-pass interval to {k-1, k}, reported
// in the frame of the instance the caller handed in.
enum class RegimeCase { Above, Below, Overlap };

struct AdvResult {
  std::vector<double> p;
  double value = 0.0;
  AdvMethod method = AdvMethod::Brute;
  std::optional<RegimeCase> regime;
};

// Worst case over all 2^n interval-endpoint choices; the expected cost is
// multilinear in p, so some extreme point attains the maximum.  Ties go to
// the lexicographically smallest choice vector (lo before hi).  n <= 25.
AdvResult brute_force_adversary(const Instance& inst, const Permutation& perm);

// Cost of the truncated process that stops after k passes or after stage
// ceil(n/2), whichever comes first: sum over the first ceil(n/2) stages of
// Pr[fewer than k passes so far].  Costs are ignored; the surrogate is a
// unit-cost analysis device.
double advbar_cost(const Instance& inst, const Permutation& perm, std::span<const double> p);

// The truncated process is hardest at p = lo in every coordinate.
AdvResult advbar_adversary(const Instance& inst, const Permutation& perm);

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

// Stage bounds on the probability of still running after nu tests when the
// prefix mean sits in the widened window.  w = min(n-nu, k-1);
// alpha = 1/4 if 3*sqrt(nu) <= ceil(w/2), else (w/4)/(6*sqrt(nu));
// beta = min(2*sqrt(2)*w/sqrt(eps*nu), 1).  beta is non-increasing in nu.
AlphaBeta window_bounds(const Instance& inst, int nu, double epsilon);

// Raised when no p in the box can keep every prefix mean inside the widened
// windows; stage is the point where the backward construction ran dry.
struct StraddleInfeasible : std::runtime_error {
  int stage;
  explicit StraddleInfeasible(int s)
      : std::runtime_error("no straddling path through stage " + std::to_string(s)), stage(s) {}
};

// Builds p in the box whose prefix means stay inside both the widened window
// and the attainable range at every stage: pick a target mean for the full
// prefix, then walk backward choosing each coordinate from the interval that
// keeps the shorter prefix feasible.  Midpoints everywhere for determinism.
// Requires the full-horizon windows to overlap; throws StraddleInfeasible.
std::vector<double> straddling_path(const Instance& inst, const Permutation& perm);

// Three-case approximate adversary: compares the attainable expected pass
// count at the horizon with {k-1, k} and plays lo (above), hi (below) or the
// straddling path (overlap).  Instances with k > n/2 are complement-reduced
// internally and the probabilities mapped back, so the returned p refers to
// the given instance.  Requires every interval strictly inside (0, 1).
AdvResult approx_adversary(const Instance& inst, const Permutation& perm);

// TV error bound per compressed-state half at moment order d.
double qptas_tv_bound(int d);

// Smallest d with qptas_tv_bound(d) <= c_min/(n^2 c_max), capped at 40.
int default_moment_order(const Instance& inst);

// Moment-compressed adversary DP on a grid-rounded instance: prefixes are
// keyed by the first d power sums of their chosen probabilities, split into
// halves at 1/2, in exact integer arithmetic.  Each state remembers the
// first prefix that reached it; stage costs are evaluated on that
// representative.  Guarantee: value >= optimum - n * qptas_tv_bound(d) * c_max,
// and d >= n makes the state key identify the prefix multiset exactly.
// Requires all costs > 0 and endpoints on the 1/n^3 grid.
AdvResult qptas_adversary(const Instance& inst, const Permutation& perm, int d,
                          std::size_t max_states = 2000000);

}  // namespace drkofn
