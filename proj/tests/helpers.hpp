#pragma once

#include <vector>

#include "drkofn/instance.hpp"
#include "drkofn/rng.hpp"

namespace testutil {

// Random instance with intervals inside [eps, 1-eps]. eps = 0 allows the
// full box. Costs in (0, 1] unless unit_costs.
inline drkofn::Instance random_instance(drkofn::SplitMix64& g, int n, int k, double eps,
                                        bool unit_costs = false) {
  drkofn::Instance inst;
  inst.n = n;
  inst.k = k;
  inst.cost.resize(n);
  inst.lo.resize(n);
  inst.hi.resize(n);
  for (int i = 0; i < n; ++i) {
    double a = g.uniform(eps, 1.0 - eps);
    double b = g.uniform(eps, 1.0 - eps);
    if (a > b) std::swap(a, b);
    inst.lo[i] = a;
    inst.hi[i] = b;
    inst.cost[i] = unit_costs ? 1.0 : 0.05 + 0.95 * g.next_double();
  }
  return inst;
}

inline std::vector<double> random_point(drkofn::SplitMix64& g, const drkofn::Instance& inst) {
  std::vector<double> p(inst.n);
  for (int i = 0; i < inst.n; ++i) p[i] = g.uniform(inst.lo[i], inst.hi[i]);
  return p;
}

inline drkofn::Permutation random_perm(drkofn::SplitMix64& g, int n) {
  drkofn::Permutation perm = drkofn::identity_permutation(n);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(g.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace testutil
