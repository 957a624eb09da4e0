#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "drkofn/adversary.hpp"
#include "drkofn/cost.hpp"
#include "drkofn/harness.hpp"
#include "drkofn/instance.hpp"
#include "drkofn/io.hpp"
#include "drkofn/solver.hpp"

namespace {

using nlohmann::ordered_json;

std::string regime_name(const std::optional<drkofn::RegimeCase>& regime) {
  if (!regime) return "";
  switch (*regime) {
    case drkofn::RegimeCase::Above: return "above";
    case drkofn::RegimeCase::Below: return "below";
    case drkofn::RegimeCase::Overlap: return "overlap";
  }
  return "";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (double v : drkofn::parse_reals(text)) out.push_back(static_cast<int>(v));
  return out;
}

drkofn::CsvRow base_row(const drkofn::Instance& inst, const std::string& method, double value) {
  return {"cli", inst.n, inst.k, drkofn::epsilon_bound(inst), 0, method, value,
          std::numeric_limits<double>::quiet_NaN()};
}

int run_gen(const std::string& family_name, int n, int k, double eps, std::uint64_t seed,
            bool unit_costs, const std::string& out_path) {
  drkofn::Family family = drkofn::family_from_name(family_name);
  drkofn::Instance inst;
  switch (family) {
    case drkofn::Family::UniformRandom:
      inst = drkofn::gen_random(n, k, 0.0, seed, unit_costs);
      break;
    case drkofn::Family::EpsilonBoundedRandom:
      if (!(eps > 0.0)) throw std::invalid_argument("family needs --eps > 0");
      inst = drkofn::gen_random(n, k, eps, seed, unit_costs);
      break;
    case drkofn::Family::AppendixGreedy:
      inst = drkofn::gen_bad_example({n, eps});
      break;
  }
  emit(drkofn::serialize_instance(inst), out_path);
  return 0;
}

int run_eval(const std::string& instance_path, const std::string& order_text,
             const std::string& p_text, bool brute, const std::vector<std::uint64_t>& mc,
             const std::string& format, const std::string& out_path) {
  drkofn::Instance inst = drkofn::load_instance(instance_path);
  drkofn::Permutation perm = drkofn::parse_order(order_text, inst.n);
  std::vector<double> p = drkofn::parse_reals(p_text);

  if (!mc.empty()) {
    drkofn::McEstimate est = drkofn::monte_carlo_cost(inst, perm, p, mc[0], mc[1]);
    if (format == "csv") {
      emit(drkofn::rows_to_csv({base_row(inst, "mc", est.value)}), out_path);
    } else {
      ordered_json j;
      j["estimate"] = est.value;
      j["stderr"] = est.std_error;
      j["trials"] = est.trials;
      emit(j.dump(2) + "\n", out_path);
    }
    return 0;
  }
  if (brute) {
    double total = drkofn::brute_force_cost(inst, perm, p);
    if (format == "csv") {
      emit(drkofn::rows_to_csv({base_row(inst, "brute", total)}), out_path);
    } else {
      ordered_json j;
      j["total"] = total;
      emit(j.dump(2) + "\n", out_path);
    }
    return 0;
  }
  drkofn::CostBreakdown breakdown = drkofn::expected_cost(inst, perm, p);
  if (format == "csv") {
    emit(drkofn::rows_to_csv({base_row(inst, "eval", breakdown.total)}), out_path);
  } else {
    ordered_json j;
    j["total"] = breakdown.total;
    j["per_stage"] = ordered_json::array();
    for (const drkofn::StageTerm& s : breakdown.stages) {
      ordered_json row;
      row["continue_probability"] = s.continue_probability;
      row["contribution"] = s.contribution;
      j["per_stage"].push_back(std::move(row));
    }
    emit(j.dump(2) + "\n", out_path);
  }
  return 0;
}

int run_adversary(const std::string& instance_path, const std::string& order_text,
                  const std::string& method, int d, const std::string& format,
                  const std::string& out_path) {
  drkofn::Instance inst = drkofn::load_instance(instance_path);
  drkofn::Permutation perm = drkofn::parse_order(order_text, inst.n);

  drkofn::AdvResult result;
  if (method == "brute") {
    result = drkofn::brute_force_adversary(inst, perm);
  } else if (method == "advbar") {
    result = drkofn::advbar_adversary(inst, perm);
  } else if (method == "approx") {
    result = drkofn::approx_adversary(inst, perm);
  } else if (method == "qptas") {
    if (!drkofn::on_grid(inst)) {
      std::cerr << "note: snapping interval endpoints to the 1/n^3 grid\n";
      inst = drkofn::round_to_grid(inst);
    }
    int order = d > 0 ? d : drkofn::default_moment_order(inst);
    if (d > 0 && order < drkofn::default_moment_order(inst))
      std::cerr << "warning: moment order " << order
                << " is below the default for this instance's cost spread\n";
    result = drkofn::qptas_adversary(inst, perm, order);
  } else {
    throw std::invalid_argument("unknown adversary method \"" + method + "\"");
  }

  if (format == "csv") {
    emit(drkofn::rows_to_csv({base_row(inst, method, result.value)}), out_path);
  } else {
    ordered_json j;
    j["method"] = method;
    if (result.regime) j["case"] = regime_name(result.regime);
    j["p"] = result.p;
    j["value"] = result.value;
    emit(j.dump(2) + "\n", out_path);
  }
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& method, const std::string& adv,
              const std::string& format, const std::string& out_path) {
  drkofn::Instance inst = drkofn::load_instance(instance_path);
  drkofn::AdvEval eval = drkofn::AdvEval::Auto;
  if (adv == "brute")
    eval = drkofn::AdvEval::Brute;
  else if (adv == "approx")
    eval = drkofn::AdvEval::Approx;
  else if (adv != "auto")
    throw std::invalid_argument("unknown adversary evaluator \"" + adv + "\"");

  drkofn::SolveResult result;
  if (method == "unit") {
    result = drkofn::unit_cost_solve(inst, eval);
  } else if (method == "general") {
    result = drkofn::general_solve(inst, eval);
  } else if (method == "brute") {
    result = drkofn::brute_force_drst(inst);
  } else {
    throw std::invalid_argument("unknown solve method \"" + method + "\"");
  }

  if (format == "csv") {
    emit(drkofn::rows_to_csv({base_row(inst, method, result.adversary_value)}), out_path);
  } else {
    ordered_json j;
    j["order"] = ordered_json::array();
    for (int t : result.order) j["order"].push_back(t + 1);
    j["adversary_value"] = result.adversary_value;
    if (result.regime) j["case"] = regime_name(result.regime);
    emit(j.dump(2) + "\n", out_path);
  }
  return 0;
}

int run_experiment(const std::string& kind, const std::string& family_name,
                   const std::string& sizes_text, const std::string& eps_text, int trials,
                   std::uint64_t seed, bool unit_costs, const std::string& format,
                   const std::string& out_path, const std::string& csv_path) {
  drkofn::ExperimentConfig cfg;
  cfg.family = drkofn::family_from_name(family_name);
  cfg.sizes = parse_ints(sizes_text);
  if (!eps_text.empty()) cfg.epsilons = drkofn::parse_reals(eps_text);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.unit_costs = unit_costs;

  if (kind == "greedy-ratio") {
    drkofn::GreedyRatioReport report = drkofn::run_greedy_ratio_experiment(cfg);
    std::vector<drkofn::CsvRow> rows = drkofn::greedy_rows(report);
    emit(format == "csv" ? drkofn::rows_to_csv(rows) : drkofn::report_to_json(report), out_path);
    if (!csv_path.empty()) emit(drkofn::rows_to_csv(rows), csv_path);
    return 0;
  }
  if (kind == "oracle-suite") {
    drkofn::OracleReport report = drkofn::run_oracle_suite(cfg);
    emit(format == "csv" ? drkofn::rows_to_csv(report.rows) : drkofn::report_to_json(report),
         out_path);
    if (!csv_path.empty()) emit(drkofn::rows_to_csv(report.rows), csv_path);
    return report.all_passed() ? 0 : 1;
  }
  throw std::invalid_argument("unknown experiment kind \"" + kind + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributionally robust k-of-n sequential testing toolkit"};
  app.require_subcommand(1);

  std::string family = "epsilon-bounded-random";
  int n = 10, k = 1, d = 0, trials = 20;
  double eps = 0.2;
  std::uint64_t seed = 1;
  bool unit_costs = false, brute = false;
  std::string instance_path, order_text, p_text, method, adv = "auto";
  std::string format = "json", out_path, csv_path, kind, sizes_text, eps_text;
  std::vector<std::uint64_t> mc;

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", family, "uniform-random | epsilon-bounded-random | appendix-greedy");
  gen->add_option("--n", n, "number of tests")->required();
  gen->add_option("--k", k, "pass threshold (appendix-greedy fixes k = n/4)");
  gen->add_option("--eps", eps, "interval margin");
  gen->add_option("--seed", seed, "random seed");
  gen->add_flag("--unit-costs", unit_costs, "set every cost to 1");
  gen->add_option("-o,--out", out_path, "output file (default stdout)");

  CLI::App* eval = app.add_subcommand("eval", "expected cost of an order at fixed p");
  eval->add_option("--instance", instance_path)->required();
  eval->add_option("--order", order_text, "1-based, e.g. 3,1,2")->required();
  eval->add_option("--p", p_text, "probabilities, e.g. 0.2,0.5,0.7")->required();
  eval->add_flag("--brute", brute, "use the outcome-enumeration oracle");
  eval->add_option("--mc", mc, "TRIALS SEED: Monte Carlo instead of exact")->expected(2);
  eval->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  eval->add_option("-o,--out", out_path);

  CLI::App* adversary = app.add_subcommand("adversary", "worst-case p for a fixed order");
  adversary->add_option("--instance", instance_path)->required();
  adversary->add_option("--order", order_text)->required();
  adversary->add_option("--method", method, "brute | advbar | approx | qptas")->required();
  adversary->add_option("--d", d, "moment order for qptas (default: from cost spread)");
  adversary->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  adversary->add_option("-o,--out", out_path);

  CLI::App* solve = app.add_subcommand("solve", "robust test order");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--method", method, "unit | general | brute")->required();
  solve->add_option("--adv", adv, "auto | brute | approx: how to score the order");
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("-o,--out", out_path);

  CLI::App* experiment = app.add_subcommand("experiment", "batch drivers with reports");
  experiment->add_option("--kind", kind, "greedy-ratio | oracle-suite")->required();
  experiment->add_option("--family", family);
  experiment->add_option("--sizes", sizes_text, "comma-separated n values")->required();
  experiment->add_option("--eps", eps_text, "comma-separated margins");
  experiment->add_option("--trials", trials, "instances per point");
  experiment->add_option("--seed", seed);
  experiment->add_flag("--unit-costs", unit_costs);
  experiment->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  experiment->add_option("-o,--out", out_path, "report file (default stdout)");
  experiment->add_option("--csv", csv_path, "also write rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return run_gen(family, n, k, eps, seed, unit_costs, out_path);
    if (eval->parsed()) return run_eval(instance_path, order_text, p_text, brute, mc, format, out_path);
    if (adversary->parsed())
      return run_adversary(instance_path, order_text, method, d, format, out_path);
    if (solve->parsed()) return run_solve(instance_path, method, adv, format, out_path);
    if (experiment->parsed())
      return run_experiment(kind, family, sizes_text, eps_text, trials, seed, unit_costs, format,
                            out_path, csv_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
