#include "drkofn/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "drkofn/pbd.hpp"
#include "drkofn/util.hpp"

namespace drkofn {

namespace {

// Bit n-1-i of a mask holds test i's choice (1 = hi), so ascending masks
// enumerate choice vectors in lexicographic order and "first strict
// improvement wins" lands on the lexicographically smallest maximizer.
void mask_to_point(const Instance& inst, std::uint64_t mask, std::vector<double>& p) {
  int n = inst.n;
  p.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool hi = (mask >> (n - 1 - i)) & 1;
    p[static_cast<std::size_t>(i)] = hi ? inst.hi[static_cast<std::size_t>(i)]
                                        : inst.lo[static_cast<std::size_t>(i)];
  }
}

}  // namespace

AdvResult brute_force_adversary(const Instance& inst, const Permutation& perm) {
  validate(inst);
  validate_permutation(perm, inst.n);
  if (inst.n > 25) throw std::invalid_argument("extreme-point enumeration limited to n <= 25");

  std::uint64_t points = std::uint64_t{1} << inst.n;
  constexpr std::size_t kChunk = 4096;
  std::size_t chunks = (static_cast<std::size_t>(points) + kChunk - 1) / kChunk;
  std::vector<double> best_value(chunks);
  std::vector<std::uint64_t> best_mask(chunks);

  parallel_chunks(static_cast<std::size_t>(points), kChunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    std::vector<double> p, row;
                    double best = -1.0;
                    std::uint64_t arg = begin;
                    for (std::size_t m = begin; m < end; ++m) {
                      mask_to_point(inst, m, p);
                      double v = expected_cost_total(inst, perm, p, row);
                      if (v > best) {
                        best = v;
                        arg = m;
                      }
                    }
                    best_value[c] = best;
                    best_mask[c] = arg;
                  });

  double best = -1.0;
  std::uint64_t arg = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (best_value[c] > best) {
      best = best_value[c];
      arg = best_mask[c];
    }
  }

  AdvResult out;
  out.method = AdvMethod::Brute;
  mask_to_point(inst, arg, out.p);
  out.value = expected_cost(inst, perm, out.p).total;
  return out;
}

double advbar_cost(const Instance& inst, const Permutation& perm, std::span<const double> p) {
  validate(inst);
  validate_permutation(perm, inst.n);
  if (p.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("probability vector length disagrees with n");
  int horizon = (inst.n + 1) / 2;
  PrefixPmf row;
  KahanSum total;
  for (int nu = 1; nu <= horizon; ++nu) {
    // Pr[fewer than k passes among the first nu-1 tests]
    int top = std::min(inst.k - 1, row.count());
    KahanSum below;
    for (int j = 0; j <= top; ++j) below.add(row.mass[static_cast<std::size_t>(j)]);
    total.add(below.value());
    if (nu < horizon) pbd_extend(row, p[static_cast<std::size_t>(perm[static_cast<std::size_t>(nu - 1)])]);
  }
  return total.value();
}

AdvResult advbar_adversary(const Instance& inst, const Permutation& perm) {
  AdvResult out;
  out.method = AdvMethod::AdvBar;
  out.p = inst.lo;
  out.value = advbar_cost(inst, perm, out.p);
  return out;
}

AlphaBeta window_bounds(const Instance& inst, int nu, double epsilon) {
  validate(inst);
  if (nu < 1 || nu > inst.n - 1) throw std::invalid_argument("stage must be in 1..n-1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  int w = std::min(inst.n - nu, inst.k - 1);
  double root = std::sqrt(static_cast<double>(nu));
  AlphaBeta out;
  int half_up = (w + 1) / 2;
  out.alpha = 3.0 * root <= static_cast<double>(half_up) ? 0.25 : (w / 4.0) / (6.0 * root);
  out.beta = std::min(2.0 * std::sqrt(2.0) * w / std::sqrt(epsilon * nu), 1.0);
  return out;
}

std::vector<double> straddling_path(const Instance& inst, const Permutation& perm) {
  validate(inst);
  validate_permutation(perm, inst.n);
  int n = inst.n;
  int k = inst.k;
  constexpr double kTol = 1e-9;

  // attainable prefix-mean range after each stage, in perm order
  std::vector<double> sum_lo(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> sum_hi(static_cast<std::size_t>(n) + 1, 0.0);
  {
    KahanSum lo, hi;
    for (int nu = 1; nu <= n; ++nu) {
      std::size_t t = static_cast<std::size_t>(perm[static_cast<std::size_t>(nu - 1)]);
      lo.add(inst.lo[t]);
      hi.add(inst.hi[t]);
      sum_lo[static_cast<std::size_t>(nu)] = lo.value();
      sum_hi[static_cast<std::size_t>(nu)] = hi.value();
    }
  }

  Window last = modified_window(n, n, k);
  double target_lo = std::max(sum_lo[static_cast<std::size_t>(n)], last.lo);
  double target_hi = std::min(sum_hi[static_cast<std::size_t>(n)], last.hi);
  if (target_lo > target_hi + kTol) throw StraddleInfeasible(n);

  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  double target = 0.5 * (target_lo + std::max(target_lo, target_hi));
  for (int nu = n; nu >= 2; --nu) {
    std::size_t t = static_cast<std::size_t>(perm[static_cast<std::size_t>(nu - 1)]);
    Window prev = modified_window(nu - 1, n, k);
    double cap_lo = std::max(sum_lo[static_cast<std::size_t>(nu - 1)], prev.lo);
    double cap_hi = std::min(sum_hi[static_cast<std::size_t>(nu - 1)], prev.hi);
    double feas_lo = std::max(inst.lo[t], target - cap_hi);
    double feas_hi = std::min(inst.hi[t], target - cap_lo);
    if (feas_lo > feas_hi + kTol) throw StraddleInfeasible(nu);
    double pv = 0.5 * (feas_lo + std::max(feas_lo, feas_hi));
    pv = std::clamp(pv, inst.lo[t], inst.hi[t]);
    p[t] = pv;
    target -= pv;
  }
  std::size_t first = static_cast<std::size_t>(perm[0]);
  if (target < inst.lo[first] - kTol || target > inst.hi[first] + kTol)
    throw StraddleInfeasible(1);
  p[first] = std::clamp(target, inst.lo[first], inst.hi[first]);
  return p;
}

AdvResult approx_adversary(const Instance& inst, const Permutation& perm) {
  validate(inst);
  validate_permutation(perm, inst.n);
  if (!(epsilon_bound(inst) > 0.0))
    throw std::invalid_argument("every interval must lie strictly inside (0,1)");

  ComplementReduced red = complement_reduce(inst);
  const Instance& work = red.instance;
  Window horizon = expected_value_window(work, perm, work.n);
  double kk = static_cast<double>(work.k);

  AdvResult out;
  out.method = AdvMethod::Approx;
  RegimeCase regime;
  if (horizon.lo > kk) {
    regime = RegimeCase::Above;
    out.p = work.lo;
  } else if (horizon.hi < kk - 1.0) {
    regime = RegimeCase::Below;
    out.p = work.hi;
  } else {
    regime = RegimeCase::Overlap;
    out.p = straddling_path(work, perm);
  }

  if (red.complemented) {
    for (double& v : out.p) v = 1.0 - v;
    if (regime == RegimeCase::Above)
      regime = RegimeCase::Below;
    else if (regime == RegimeCase::Below)
      regime = RegimeCase::Above;
  }
  out.regime = regime;
  out.value = expected_cost(inst, perm, out.p).total;
  return out;
}

}  // namespace drkofn
