#pragma once

#include <optional>
#include <span>

#include "drkofn/adversary.hpp"
#include "drkofn/instance.hpp"

namespace drkofn {

enum class SolveMethod { UnitCost, General, BruteForce };

// How to score a returned order.  Auto uses the exact enumeration up to
// n = 15 and the three-case adversary beyond that.
enum class AdvEval { Auto, Brute, Approx };

struct SolveResult {
  Permutation order;
  double adversary_value = 0.0;
  SolveMethod method = SolveMethod::General;
  std::optional<RegimeCase> regime;
};

// Order rule for known point probabilities: list A by increasing c/(1-p),
// list B by increasing c/p, emitted round-robin starting with A and skipping
// tests the other list already placed.  k = n returns list A alone, k = 1
// list B alone.  Zero denominators rank last within their list; ties break
// by test index.
Permutation classical_sst(std::span<const double> costs, std::span<const double> p, int k);

// Robust order for unit costs: decreasing lo when k <= n/2, else increasing
// hi (the complement-reduced instance sorted by decreasing lo).  Warns on
// non-unit costs but still runs.
SolveResult unit_cost_solve(const Instance& inst, AdvEval eval = AdvEval::Auto);

// Robust order for general costs.  After complement reduction, compares the
// horizon expected-pass interval with {k-1, k}: entirely above plays the
// classical rule at lo, entirely below at hi, and the overlap case simply
// runs cheap tests first.
SolveResult general_solve(const Instance& inst, AdvEval eval = AdvEval::Auto);

// Exact min-max over all n! orders, each scored by the extreme-point
// enumeration; ties go to the lexicographically smallest order.  n <= 8.
SolveResult brute_force_drst(const Instance& inst);

}  // namespace drkofn
