#include "drkofn/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "drkofn/pbd.hpp"
#include "drkofn/rng.hpp"
#include "drkofn/util.hpp"

namespace drkofn {

namespace {

void check_eval_inputs(const Instance& inst, const Permutation& perm, std::span<const double> p) {
  validate(inst);
  validate_permutation(perm, inst.n);
  if (p.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("probability vector length disagrees with n");
  for (double pi : p)
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
}

}  // namespace

namespace {

// Shared stage loop.  stages may be null; row is the rolling prefix pmf.
double cost_stages(const Instance& inst, const Permutation& perm, std::span<const double> p,
                   std::vector<double>& row, std::vector<StageTerm>* stages) {
  int n = inst.n;
  int k = inst.k;
  row.assign(1, 1.0);
  KahanSum total;
  for (int nu = 1; nu <= n; ++nu) {
    std::size_t t = static_cast<std::size_t>(perm[static_cast<std::size_t>(nu - 1)]);
    // mass of the undecided pass-count band [ (nu-1-n+k)^+, k-1 ] so far
    int wlo = nu - 1 - n + k;
    if (wlo < 0) wlo = 0;
    int whi = k - 1;
    if (whi > nu - 1) whi = nu - 1;
    KahanSum band;
    for (int j = wlo; j <= whi; ++j) band.add(row[static_cast<std::size_t>(j)]);
    double prob = band.value();
    double contribution = inst.cost[t] * prob;
    total.add(contribution);
    if (stages) stages->push_back({prob, contribution});
    if (nu < n) {
      double pv = p[t];
      double q = 1.0 - pv;
      row.push_back(0.0);
      for (std::size_t j = row.size() - 1; j > 0; --j) row[j] = row[j - 1] * pv + row[j] * q;
      row[0] *= q;
    }
  }
  return total.value();
}

}  // namespace

CostBreakdown expected_cost(const Instance& inst, const Permutation& perm,
                            std::span<const double> p) {
  check_eval_inputs(inst, perm, p);
  CostBreakdown out;
  out.stages.reserve(static_cast<std::size_t>(inst.n));
  std::vector<double> row;
  out.total = cost_stages(inst, perm, p, row, &out.stages);
  return out;
}

double expected_cost_total(const Instance& inst, const Permutation& perm,
                           std::span<const double> p, std::vector<double>& row) {
  return cost_stages(inst, perm, p, row, nullptr);
}

double brute_force_cost(const Instance& inst, const Permutation& perm, std::span<const double> p) {
  check_eval_inputs(inst, perm, p);
  if (inst.n > 25) throw std::invalid_argument("outcome enumeration limited to n <= 25");
  int n = inst.n;
  int k = inst.k;
  KahanSum total;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      bool pass = (x >> i) & 1;
      weight *= pass ? p[static_cast<std::size_t>(i)] : 1.0 - p[static_cast<std::size_t>(i)];
    }
    if (weight == 0.0) continue;
    double run_cost = 0.0;
    int passes = 0, fails = 0;
    for (int nu = 0; nu < n; ++nu) {
      int t = perm[static_cast<std::size_t>(nu)];
      run_cost += inst.cost[static_cast<std::size_t>(t)];
      if ((x >> t) & 1)
        ++passes;
      else
        ++fails;
      if (passes >= k || fails >= n - k + 1) break;
    }
    total.add(weight * run_cost);
  }
  return total.value();
}

McEstimate monte_carlo_cost(const Instance& inst, const Permutation& perm,
                            std::span<const double> p, std::uint64_t trials, std::uint64_t seed) {
  check_eval_inputs(inst, perm, p);
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  int n = inst.n;
  int k = inst.k;

  constexpr std::size_t kChunk = 1 << 16;
  std::size_t chunks = (static_cast<std::size_t>(trials) + kChunk - 1) / kChunk;
  std::vector<double> chunk_sum(chunks, 0.0), chunk_sq(chunks, 0.0);

  parallel_chunks(static_cast<std::size_t>(trials), kChunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    KahanSum sum, sq;
                    for (std::size_t t = begin; t < end; ++t) {
                      SplitMix64 g(stream_seed(seed, t));
                      double run_cost = 0.0;
                      int passes = 0, fails = 0;
                      for (int nu = 0; nu < n; ++nu) {
                        std::size_t idx = static_cast<std::size_t>(perm[static_cast<std::size_t>(nu)]);
                        run_cost += inst.cost[idx];
                        if (g.next_double() < p[idx])
                          ++passes;
                        else
                          ++fails;
                        if (passes >= k || fails >= n - k + 1) break;
                      }
                      sum.add(run_cost);
                      sq.add(run_cost * run_cost);
                    }
                    chunk_sum[c] = sum.value();
                    chunk_sq[c] = sq.value();
                  });

  KahanSum sum, sq;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum.add(chunk_sum[c]);
    sq.add(chunk_sq[c]);
  }
  double t = static_cast<double>(trials);
  double mean = sum.value() / t;
  McEstimate out{mean, 0.0, trials};
  if (trials > 1) {
    double ss = sq.value() - sum.value() * sum.value() / t;
    if (ss < 0.0) ss = 0.0;
    out.std_error = std::sqrt(ss / (t - 1.0) / t);
  }
  return out;
}

}  // namespace drkofn
