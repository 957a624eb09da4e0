#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "drkofn/adversary.hpp"
#include "drkofn/pbd.hpp"

namespace drkofn {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// One reachable compressed prefix: the first d power sums of the chosen grid
// probabilities, split into the half at most 1/2 and the half above it.
// pred/pred_choice reconstruct the first prefix that reached the key.
struct QState {
  std::vector<BigInt> key;
  int pred = -1;
  int pred_choice = 0;
  int child[2] = {-1, -1};
};

void add_powers(std::vector<BigInt>& key, int d, long long z, bool high) {
  std::size_t off = high ? static_cast<std::size_t>(d) : 0;
  BigInt zp = 1;
  for (int a = 0; a < d; ++a) {
    zp *= z;
    key[off + static_cast<std::size_t>(a)] += zp;
  }
}

}  // namespace

double qptas_tv_bound(int d) {
  return 26.0 * std::pow(d + 1.0, 0.25) * std::pow(2.0, -0.5 * (d + 1.0));
}

int default_moment_order(const Instance& inst) {
  validate(inst);
  double cmin = *std::min_element(inst.cost.begin(), inst.cost.end());
  double cmax = *std::max_element(inst.cost.begin(), inst.cost.end());
  if (!(cmin > 0.0)) throw std::invalid_argument("costs must be positive");
  double target = cmin / (static_cast<double>(inst.n) * inst.n * cmax);
  for (int d = 1; d < 40; ++d)
    if (qptas_tv_bound(d) <= target) return d;
  return 40;
}

AdvResult qptas_adversary(const Instance& inst, const Permutation& perm, int d,
                          std::size_t max_states) {
  validate(inst);
  validate_permutation(perm, inst.n);
  if (d < 1) throw std::invalid_argument("moment order must be at least 1");
  for (double c : inst.cost)
    if (!(c > 0.0)) throw std::invalid_argument("costs must be positive");
  if (!on_grid(inst))
    throw std::invalid_argument("endpoints must lie on the 1/n^3 grid; apply round_to_grid first");

  int n = inst.n;
  long long grid = static_cast<long long>(n) * n * n;
  std::vector<long long> z_lo(static_cast<std::size_t>(n)), z_hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::size_t t = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]);
    z_lo[static_cast<std::size_t>(i)] = std::llround(inst.lo[t] * static_cast<double>(grid));
    z_hi[static_cast<std::size_t>(i)] = std::llround(inst.hi[t] * static_cast<double>(grid));
  }

  // forward reachability; first arrival fixes each state's representative
  std::vector<std::vector<QState>> stages(static_cast<std::size_t>(n) + 1);
  stages[0].push_back(QState{std::vector<BigInt>(2 * static_cast<std::size_t>(d)), -1, 0, {-1, -1}});
  std::size_t total_states = 1;
  for (int i = 0; i < n; ++i) {
    std::map<std::vector<BigInt>, int> index;
    auto& cur = stages[static_cast<std::size_t>(i)];
    auto& next = stages[static_cast<std::size_t>(i) + 1];
    for (std::size_t s = 0; s < cur.size(); ++s) {
      for (int choice = 0; choice < 2; ++choice) {
        long long z = choice ? z_hi[static_cast<std::size_t>(i)] : z_lo[static_cast<std::size_t>(i)];
        if (choice == 1 && z_hi[static_cast<std::size_t>(i)] == z_lo[static_cast<std::size_t>(i)]) {
          cur[s].child[1] = cur[s].child[0];
          continue;
        }
        std::vector<BigInt> key = cur[s].key;
        add_powers(key, d, z, 2 * z > grid);
        auto [it, inserted] = index.try_emplace(key, static_cast<int>(next.size()));
        if (inserted) {
          next.push_back(QState{std::move(key), static_cast<int>(s), choice, {-1, -1}});
          if (++total_states > max_states)
            throw std::runtime_error("compressed state budget exceeded");
        }
        cur[s].child[choice] = it->second;
      }
    }
  }

  // backward values; stage cost uses the representative prefix of each state
  std::vector<std::vector<double>> value(static_cast<std::size_t>(n) + 1);
  value[static_cast<std::size_t>(n)].assign(stages[static_cast<std::size_t>(n)].size(), 0.0);
  std::vector<double> rep;
  for (int i = n - 1; i >= 0; --i) {
    auto& cur = stages[static_cast<std::size_t>(i)];
    value[static_cast<std::size_t>(i)].resize(cur.size());
    for (std::size_t s = 0; s < cur.size(); ++s) {
      rep.assign(static_cast<std::size_t>(i), 0.0);
      int stage = i;
      int at = static_cast<int>(s);
      while (stage > 0) {
        const QState& st = stages[static_cast<std::size_t>(stage)][static_cast<std::size_t>(at)];
        long long z = st.pred_choice ? z_hi[static_cast<std::size_t>(stage - 1)]
                                     : z_lo[static_cast<std::size_t>(stage - 1)];
        rep[static_cast<std::size_t>(stage - 1)] = static_cast<double>(z) / static_cast<double>(grid);
        at = st.pred;
        --stage;
      }
      double run_prob = window_mass(pbd_pmf(rep), non_stopping_window(i, n, inst.k));
      double stage_cost =
          inst.cost[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] * run_prob;
      const auto& deeper = value[static_cast<std::size_t>(i) + 1];
      double lo_val = deeper[static_cast<std::size_t>(cur[s].child[0])];
      double hi_val = deeper[static_cast<std::size_t>(cur[s].child[1])];
      value[static_cast<std::size_t>(i)][s] = stage_cost + std::max(lo_val, hi_val);
    }
  }

  // reconstruct the maximizing path, lo preferred on ties
  AdvResult out;
  out.method = AdvMethod::Qptas;
  out.p.assign(static_cast<std::size_t>(n), 0.0);
  int at = 0;
  for (int i = 0; i < n; ++i) {
    const QState& st = stages[static_cast<std::size_t>(i)][static_cast<std::size_t>(at)];
    const auto& deeper = value[static_cast<std::size_t>(i) + 1];
    int choice =
        deeper[static_cast<std::size_t>(st.child[0])] >= deeper[static_cast<std::size_t>(st.child[1])]
            ? 0
            : 1;
    long long z = choice ? z_hi[static_cast<std::size_t>(i)] : z_lo[static_cast<std::size_t>(i)];
    out.p[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
        static_cast<double>(z) / static_cast<double>(grid);
    at = st.child[choice];
  }
  out.value = expected_cost(inst, perm, out.p).total;
  return out;
}

}  // namespace drkofn
