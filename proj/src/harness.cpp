#include "drkofn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "drkofn/adversary.hpp"
#include "drkofn/cost.hpp"
#include "drkofn/io.hpp"
#include "drkofn/rng.hpp"
#include "drkofn/solver.hpp"

namespace drkofn {

Family family_from_name(const std::string& name) {
  if (name == "uniform-random") return Family::UniformRandom;
  if (name == "epsilon-bounded-random") return Family::EpsilonBoundedRandom;
  if (name == "appendix-greedy") return Family::AppendixGreedy;
  throw std::invalid_argument("unknown family \"" + name + "\"");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::UniformRandom: return "uniform-random";
    case Family::EpsilonBoundedRandom: return "epsilon-bounded-random";
    case Family::AppendixGreedy: return "appendix-greedy";
  }
  return "";
}

Instance gen_random(int n, int k, double eps, std::uint64_t seed, bool unit_costs) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (k < 1 || k > n) throw std::invalid_argument("k out of range");
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("eps must be in [0, 0.5)");
  SplitMix64 g(seed);
  Instance inst;
  inst.n = n;
  inst.k = k;
  for (int i = 0; i < n; ++i) {
    double cost = g.uniform(0.0, 1.0);
    double a = g.uniform(eps, 1.0 - eps);
    double b = g.uniform(eps, 1.0 - eps);
    if (a > b) std::swap(a, b);
    inst.cost.push_back(unit_costs ? 1.0 : cost);
    inst.lo.push_back(a);
    inst.hi.push_back(b);
  }
  return inst;
}

Instance gen_bad_example(const BadExampleParams& params) {
  if (params.n < 20 || params.n % 20 != 0)
    throw std::invalid_argument("n must be a positive multiple of 20");
  if (!(params.epsilon > 0.0 && params.epsilon < 0.5))
    throw std::invalid_argument("epsilon must be in (0, 1/2)");
  int n = params.n;
  Instance inst;
  inst.n = n;
  inst.k = n / 4;
  auto block = [&](int count, double cost, double p) {
    for (int i = 0; i < count; ++i) {
      inst.cost.push_back(cost);
      inst.lo.push_back(p);
      inst.hi.push_back(p);
    }
  };
  block(8 * n / 10, 0.0, 1.0 / 16.0);          // free tests, rarely pass
  block(n / 10, 1.0, 0.5);                     // coin flips
  block(n / 10, 1.0, 1.0 - params.epsilon);    // near-certain passes
  return inst;
}

namespace {

Permutation random_perm(int n, SplitMix64& g) {
  Permutation perm = identity_permutation(n);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(g.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

std::vector<double> random_point(const Instance& inst, SplitMix64& g) {
  std::vector<double> p(static_cast<std::size_t>(inst.n));
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = g.uniform(inst.lo[i], inst.hi[i]);
  return p;
}

Permutation greedy_cost_per_fail_order(const Instance& inst) {
  std::vector<double> ratio(static_cast<std::size_t>(inst.n));
  for (std::size_t i = 0; i < ratio.size(); ++i)
    ratio[i] = inst.cost[i] == 0.0 ? 0.0 : inst.cost[i] / inst.lo[i];
  Permutation idx = identity_permutation(inst.n);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    std::size_t ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (ratio[ua] != ratio[ub]) return ratio[ua] < ratio[ub];
    return a < b;
  });
  return idx;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

GreedyRatioReport run_greedy_ratio_experiment(const ExperimentConfig& cfg) {
  GreedyRatioReport report;
  for (int n : cfg.sizes) {
    for (double eps : cfg.epsilons) {
      Instance inst = gen_bad_example({n, eps});
      Permutation greedy = greedy_cost_per_fail_order(inst);
      Permutation reference = identity_permutation(n);
      double grd = expected_cost(inst, greedy, inst.lo).total;
      double alt = expected_cost(inst, reference, inst.lo).total;
      report.rows.push_back({n, eps, grd, alt, grd / alt});
    }
  }
  return report;
}

bool OracleReport::all_passed() const {
  for (const OracleCheck& c : checks)
    if (c.failed > 0) return false;
  return true;
}

namespace {

struct SuiteDriver {
  const ExperimentConfig& cfg;
  OracleReport& report;

  // Runs body(n, eps, instance_seed) cfg.trials times per (size, eps) point,
  // with sizes clamped to max_n.  body returns true on pass.
  void run_check(const std::string& name, int check_id, int max_n,
                 const std::function<bool(int, double, std::uint64_t, OracleCheck&)>& body) {
    OracleCheck check{name, 0, 0, ""};
    SplitMix64 master(stream_seed(cfg.seed, static_cast<std::uint64_t>(check_id)));
    for (int size : cfg.sizes) {
      int n = std::min(size, max_n);
      if (n < 1) continue;
      for (double eps : cfg.epsilons) {
        for (int t = 0; t < cfg.trials; ++t) {
          std::uint64_t iseed = master.next();
          bool ok;
          try {
            ok = body(n, eps, iseed, check);
          } catch (const std::exception& e) {
            ok = false;
            if (check.note.empty()) check.note = std::string("error: ") + e.what();
          }
          if (ok)
            ++check.passed;
          else
            ++check.failed;
        }
      }
    }
    report.checks.push_back(std::move(check));
  }
};

}  // namespace

OracleReport run_oracle_suite(const ExperimentConfig& cfg) {
  OracleReport report;
  if (cfg.sizes.empty()) return report;
  SuiteDriver drv{cfg, report};

  drv.run_check("cost-oracle", 1, 12, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = gen_random(n, k, eps, g.next(), cfg.unit_costs);
    Permutation perm = random_perm(n, g);
    std::vector<double> p = random_point(inst, g);
    return std::abs(expected_cost(inst, perm, p).total - brute_force_cost(inst, perm, p)) <= 1e-9;
  });

  drv.run_check("mc-consistency", 2, 10, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = gen_random(n, k, eps, g.next(), cfg.unit_costs);
    Permutation perm = random_perm(n, g);
    std::vector<double> p = random_point(inst, g);
    double exact = expected_cost(inst, perm, p).total;
    McEstimate mc = monte_carlo_cost(inst, perm, p, 200000, g.next());
    return std::abs(mc.value - exact) <= 4.0 * mc.std_error + 1e-12;
  });

  drv.run_check("advbar-dominance", 3, 12, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = complement_reduce(gen_random(n, k, eps, g.next(), true)).instance;
    Permutation perm = random_perm(n, g);
    AdvResult bar = advbar_adversary(inst, perm);
    for (int q = 0; q < 200; ++q) {
      std::vector<double> probe = random_point(inst, g);
      if (bar.value < advbar_cost(inst, perm, probe) - 1e-9) return false;
    }
    return true;
  });

  drv.run_check("advbar-sandwich", 4, 10, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = complement_reduce(gen_random(n, k, eps, g.next(), true)).instance;
    Permutation perm = random_perm(n, g);
    double exact = brute_force_adversary(inst, perm).value;
    double bar = advbar_adversary(inst, perm).value;
    return bar >= 0.5 * exact - 1e-9 && bar <= exact + 1e-9;
  });

  {
    OracleCheck check{"approx-feasibility-ratio", 0, 0, ""};
    std::map<double, std::vector<double>> ratios;
    int skipped = 0, infeasible = 0;
    SplitMix64 master(stream_seed(cfg.seed, 5));
    for (int size : cfg.sizes) {
      int n = std::min(size, 12);
      if (n < 1) continue;
      for (double eps : cfg.epsilons) {
        for (int t = 0; t < cfg.trials; ++t) {
          std::uint64_t iseed = master.next();
          if (!(eps > 0.0) || n * eps < 2.0) {
            ++skipped;  // straddling guarantee needs n >= 2/eps
            continue;
          }
          SplitMix64 g(iseed);
          int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
          Instance inst = gen_random(n, k, eps, g.next(), cfg.unit_costs);
          Permutation perm = random_perm(n, g);
          try {
            AdvResult approx = approx_adversary(inst, perm);
            double exact = brute_force_adversary(inst, perm).value;
            double ratio = exact > 0.0 ? approx.value / exact : 1.0;
            ratios[eps].push_back(ratio);
            bool ok = in_uncertainty_set(inst, approx.p, 1e-9) &&
                      std::abs(expected_cost(inst, perm, approx.p).total - approx.value) <= 1e-9;
            if (eps >= 0.2 && ratio <= 0.05) ok = false;
            report.rows.push_back({family_name(cfg.family), n, k, eps, iseed, "approx",
                                   approx.value, ratio});
            report.rows.push_back({family_name(cfg.family), n, k, eps, iseed, "brute", exact,
                                   std::numeric_limits<double>::quiet_NaN()});
            if (ok)
              ++check.passed;
            else
              ++check.failed;
          } catch (const StraddleInfeasible&) {
            ++infeasible;
            ++check.failed;
          }
        }
      }
    }
    std::string note;
    for (const auto& [eps, rs] : ratios) {
      if (!note.empty()) note += "; ";
      note += "eps=" + format_short(eps) +
              ": min=" + format_short(*std::min_element(rs.begin(), rs.end())) +
              " median=" + format_short(median_of(rs)) +
              " count=" + std::to_string(rs.size());
    }
    if (skipped) note += (note.empty() ? "" : "; ") + std::string("skipped=") + std::to_string(skipped);
    if (infeasible) note += "; infeasible=" + std::to_string(infeasible);
    check.note = note;
    report.checks.push_back(std::move(check));
  }

  drv.run_check("unit-2approx", 6, 7, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = gen_random(n, k, eps, g.next(), true);
    double mine = unit_cost_solve(inst, AdvEval::Brute).adversary_value;
    double best = brute_force_drst(inst).adversary_value;
    return mine <= 2.0 * best + 1e-9;
  });

  {
    OracleCheck check{"general-ratio", 0, 0, ""};
    double worst = 0.0;
    SplitMix64 master(stream_seed(cfg.seed, 7));
    for (int size : cfg.sizes) {
      int n = std::min(size, 7);
      if (n < 1) continue;
      for (double eps : cfg.epsilons) {
        for (int t = 0; t < cfg.trials; ++t) {
          std::uint64_t iseed = master.next();
          if (eps < 0.2) continue;  // ratio bound recorded for well-bounded instances
          SplitMix64 g(iseed);
          int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
          Instance inst = gen_random(n, k, eps, g.next(), cfg.unit_costs);
          double mine = general_solve(inst, AdvEval::Brute).adversary_value;
          double best = brute_force_drst(inst).adversary_value;
          double ratio = best > 0.0 ? mine / best : 1.0;
          worst = std::max(worst, ratio);
          report.rows.push_back({family_name(cfg.family), n, k, eps, iseed, "general", mine, ratio});
          if (ratio <= 10.0 + 1e-9)
            ++check.passed;
          else
            ++check.failed;
        }
      }
    }
    check.note = "max ratio=" + format_short(worst);
    report.checks.push_back(std::move(check));
  }

  drv.run_check("qptas-exact", 8, 8, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = gen_random(n, k, eps, g.next(), cfg.unit_costs);
    for (double& c : inst.cost) c = std::max(c, 1e-3);
    inst = round_to_grid(inst);
    Permutation perm = random_perm(n, g);
    double exact = brute_force_adversary(inst, perm).value;
    double mine = qptas_adversary(inst, perm, n).value;
    return std::abs(mine - exact) <= 1e-9;
  });

  drv.run_check("serialize-roundtrip", 9, 1000, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = round_to_grid(gen_random(n, k, eps, g.next(), cfg.unit_costs));
    Instance back = parse_instance(serialize_instance(inst));
    if (back.n != inst.n || back.k != inst.k) return false;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
      if (back.cost[i] != inst.cost[i] || back.lo[i] != inst.lo[i] || back.hi[i] != inst.hi[i])
        return false;
    return true;
  });

  drv.run_check("window-propagation", 10, 20, [&](int n, double eps, std::uint64_t s, OracleCheck&) {
    SplitMix64 g(s);
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = gen_random(n, k, eps, g.next(), cfg.unit_costs);
    Permutation perm = random_perm(n, g);
    bool below_somewhere = false;
    for (int nu = 1; nu < n; ++nu) {
      Window e = expected_value_window(inst, perm, nu);
      Window m = modified_window(nu, n, k);
      if (e.hi < m.lo - 1e-12) below_somewhere = true;
    }
    if (!below_somewhere) return true;
    Window e = expected_value_window(inst, perm, n);
    return e.hi < modified_window(n, n, k).lo + 1e-12;
  });

  return report;
}

std::string report_to_json(const GreedyRatioReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = "greedy-ratio";
  j["rows"] = nlohmann::ordered_json::array();
  for (const GreedyRatioRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["epsilon"] = r.epsilon;
    row["greedy_cost"] = r.greedy_cost;
    row["reference_cost"] = r.reference_cost;
    row["ratio"] = r.ratio;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const OracleReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = "oracle-suite";
  j["all_passed"] = report.all_passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const OracleCheck& c : report.checks) {
    nlohmann::ordered_json row;
    row["name"] = c.name;
    row["passed"] = c.passed;
    row["failed"] = c.failed;
    row["note"] = c.note;
    j["checks"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "family,n,k,eps,seed,method,value,ratio\n";
  for (const CsvRow& r : rows) {
    out += r.family + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           format_double(r.eps) + "," + std::to_string(r.seed) + "," + r.method + "," +
           format_double(r.value) + ",";
    if (!std::isnan(r.ratio)) out += format_double(r.ratio);
    out += "\n";
  }
  return out;
}

std::vector<CsvRow> greedy_rows(const GreedyRatioReport& report) {
  std::vector<CsvRow> rows;
  for (const GreedyRatioRow& r : report.rows) {
    rows.push_back({"appendix-greedy", r.n, r.n / 4, r.epsilon, 0, "greedy", r.greedy_cost,
                    r.ratio});
    rows.push_back({"appendix-greedy", r.n, r.n / 4, r.epsilon, 0, "reference",
                    r.reference_cost, std::numeric_limits<double>::quiet_NaN()});
  }
  return rows;
}

}  // namespace drkofn
