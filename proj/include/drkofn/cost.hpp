#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "drkofn/instance.hpp"

namespace drkofn {

struct StageTerm {
  // Pr[the run is still undecided when this stage starts].
  double continue_probability = 0.0;
  // cost of the stage's test times that probability.
  double contribution = 0.0;
};

// Expected cost of running perm at a fixed probability vector, stage by
// stage.  stages[0].continue_probability is always 1 and the continuation
// probabilities never increase: once a run stops it stays stopped.
struct CostBreakdown {
  double total = 0.0;
  std::vector<StageTerm> stages;
};

// Exact expected cost via prefix pass-count distributions, O(n^2).
// p may sit anywhere in [0,1]^n; membership in the uncertainty box is not
// required here because adversary searches also probe boundary points.
CostBreakdown expected_cost(const Instance& inst, const Permutation& perm,
                            std::span<const double> p);

// Total of expected_cost without the per-stage breakdown, reusing row as
// scratch to avoid allocation in enumeration loops.  Inputs are assumed
// already validated; the arithmetic matches expected_cost bit for bit.
double expected_cost_total(const Instance& inst, const Permutation& perm,
                           std::span<const double> p, std::vector<double>& row);

// Independent oracle: enumerates all 2^n outcome vectors and charges the
// tests performed before a stop (k passes or n-k+1 fails).  n <= 25.
double brute_force_cost(const Instance& inst, const Permutation& perm, std::span<const double> p);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Simulates the sequential run.  Each trial draws from its own SplitMix64
// stream keyed by (seed, trial), so the estimate is bit-identical across
// platforms and thread counts.
McEstimate monte_carlo_cost(const Instance& inst, const Permutation& perm,
                            std::span<const double> p, std::uint64_t trials, std::uint64_t seed);

}  // namespace drkofn
