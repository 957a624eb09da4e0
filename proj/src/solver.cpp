#include "drkofn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "drkofn/util.hpp"

namespace drkofn {

namespace {

Permutation sorted_order(int n, const std::function<bool(int, int)>& before) {
  Permutation idx = identity_permutation(n);
  std::sort(idx.begin(), idx.end(), before);
  return idx;
}

Permutation ratio_order(std::span<const double> costs, std::span<const double> denom) {
  int n = static_cast<int>(costs.size());
  std::vector<double> ratio(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < ratio.size(); ++i)
    ratio[i] = denom[i] == 0.0 ? std::numeric_limits<double>::infinity() : costs[i] / denom[i];
  return sorted_order(n, [&](int a, int b) {
    std::size_t ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (ratio[ua] != ratio[ub]) return ratio[ua] < ratio[ub];
    return a < b;
  });
}

double score_order(const Instance& inst, const Permutation& order, AdvEval eval) {
  bool brute = eval == AdvEval::Brute || (eval == AdvEval::Auto && inst.n <= 15);
  return brute ? brute_force_adversary(inst, order).value
               : approx_adversary(inst, order).value;
}

}  // namespace

Permutation classical_sst(std::span<const double> costs, std::span<const double> p, int k) {
  int n = static_cast<int>(costs.size());
  if (p.size() != costs.size()) throw std::invalid_argument("costs and p lengths disagree");
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("k out of range");

  std::vector<double> fail(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < fail.size(); ++i) fail[i] = 1.0 - p[i];
  if (k == n) return ratio_order(costs, fail);
  if (k == 1) return ratio_order(costs, p);

  Permutation a = ratio_order(costs, fail);
  Permutation b = ratio_order(costs, p);
  Permutation out;
  out.reserve(static_cast<std::size_t>(n));
  std::vector<char> emitted(static_cast<std::size_t>(n), 0);
  std::size_t ia = 0, ib = 0;
  bool turn_a = true;
  while (out.size() < static_cast<std::size_t>(n)) {
    Permutation& list = turn_a ? a : b;
    std::size_t& pos = turn_a ? ia : ib;
    while (pos < list.size() && emitted[static_cast<std::size_t>(list[pos])]) ++pos;
    if (pos < list.size()) {
      out.push_back(list[pos]);
      emitted[static_cast<std::size_t>(list[pos])] = 1;
      ++pos;
    }
    turn_a = !turn_a;
  }
  return out;
}

SolveResult unit_cost_solve(const Instance& inst, AdvEval eval) {
  validate(inst);
  for (double c : inst.cost) {
    if (c != 1.0) {
      std::cerr << "warning: unit-cost order rule applied to non-unit costs\n";
      break;
    }
  }
  Permutation order =
      2 * inst.k <= inst.n
          ? sorted_order(inst.n,
                         [&](int a, int b) {
                           std::size_t ua = static_cast<std::size_t>(a),
                                       ub = static_cast<std::size_t>(b);
                           if (inst.lo[ua] != inst.lo[ub]) return inst.lo[ua] > inst.lo[ub];
                           return a < b;
                         })
          : sorted_order(inst.n, [&](int a, int b) {
              std::size_t ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
              if (inst.hi[ua] != inst.hi[ub]) return inst.hi[ua] < inst.hi[ub];
              return a < b;
            });
  return {order, score_order(inst, order, eval), SolveMethod::UnitCost, std::nullopt};
}

SolveResult general_solve(const Instance& inst, AdvEval eval) {
  validate(inst);
  ComplementReduced red = complement_reduce(inst);
  const Instance& work = red.instance;
  Window horizon = expected_value_window(work, identity_permutation(work.n), work.n);
  double kk = static_cast<double>(work.k);

  Permutation order;
  RegimeCase regime;
  if (horizon.lo > kk) {
    regime = RegimeCase::Above;
    order = classical_sst(work.cost, work.lo, work.k);
  } else if (horizon.hi < kk - 1.0) {
    regime = RegimeCase::Below;
    order = classical_sst(work.cost, work.hi, work.k);
  } else {
    regime = RegimeCase::Overlap;
    order = sorted_order(work.n, [&](int a, int b) {
      std::size_t ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      if (work.cost[ua] != work.cost[ub]) return work.cost[ua] < work.cost[ub];
      return a < b;
    });
  }
  if (red.complemented) {
    if (regime == RegimeCase::Above)
      regime = RegimeCase::Below;
    else if (regime == RegimeCase::Below)
      regime = RegimeCase::Above;
  }
  return {order, score_order(inst, order, eval), SolveMethod::General, regime};
}

SolveResult brute_force_drst(const Instance& inst) {
  validate(inst);
  if (inst.n > 8) throw std::invalid_argument("order enumeration limited to n <= 8");
  int n = inst.n;

  std::vector<Permutation> orders;
  Permutation perm = identity_permutation(n);
  do {
    orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::uint64_t points = std::uint64_t{1} << n;
  constexpr std::size_t kChunk = 64;
  std::size_t chunks = (orders.size() + kChunk - 1) / kChunk;
  std::vector<double> chunk_best(chunks);
  std::vector<std::size_t> chunk_arg(chunks);

  parallel_chunks(orders.size(), kChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::vector<double> p(static_cast<std::size_t>(n)), row;
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = begin;
    for (std::size_t o = begin; o < end; ++o) {
      double worst = -1.0;
      for (std::uint64_t mask = 0; mask < points; ++mask) {
        for (int i = 0; i < n; ++i)
          p[static_cast<std::size_t>(i)] = ((mask >> (n - 1 - i)) & 1)
                                               ? inst.hi[static_cast<std::size_t>(i)]
                                               : inst.lo[static_cast<std::size_t>(i)];
        double v = expected_cost_total(inst, orders[o], p, row);
        if (v > worst) worst = v;
      }
      if (worst < best) {
        best = worst;
        arg = o;
      }
    }
    chunk_best[c] = best;
    chunk_arg[c] = arg;
  });

  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (chunk_best[c] < best) {
      best = chunk_best[c];
      arg = chunk_arg[c];
    }
  }

  const Permutation& order = orders[arg];
  return {order, brute_force_adversary(inst, order).value, SolveMethod::BruteForce, std::nullopt};
}

}  // namespace drkofn
