#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "drkofn/instance.hpp"

namespace drkofn {

enum class Family { UniformRandom, EpsilonBoundedRandom, AppendixGreedy };

Family family_from_name(const std::string& name);
std::string family_name(Family family);

struct ExperimentConfig {
  Family family = Family::EpsilonBoundedRandom;
  std::vector<int> sizes;
  int trials = 20;  // instances per (size, epsilon) point
  std::uint64_t seed = 1;
  std::vector<double> epsilons{0.2};
  bool unit_costs = false;
};

struct BadExampleParams {
  int n = 20;  // divisible by 20 so the three block sizes and k = n/4 are integral
  double epsilon = 0.1;
};

// Intervals drawn as two uniforms in [eps, 1-eps], sorted; costs uniform in
// [0,1] unless unit_costs (the cost draw is consumed either way, so the
// intervals do not depend on the flag).  Deterministic in all arguments.
Instance gen_random(int n, int k, double eps, std::uint64_t seed, bool unit_costs = false);

// Hard family for the greedy ratio experiment: 0.8n zero-cost tests passing
// 1/16 of the time, 0.1n coin flips at cost 1, 0.1n tests passing with
// probability 1-eps at cost 1; threshold k = n/4; degenerate intervals.
Instance gen_bad_example(const BadExampleParams& params);

struct GreedyRatioRow {
  int n = 0;
  double epsilon = 0.0;
  double greedy_cost = 0.0;
  double reference_cost = 0.0;
  double ratio = 0.0;
};

struct GreedyRatioReport {
  std::vector<GreedyRatioRow> rows;
};

// For each (n, eps): exact cost of the order sorted by increasing cost/lo
// (zero-cost tests first) against the blockwise reference order, both at the
// instance's fixed probabilities.
GreedyRatioReport run_greedy_ratio_experiment(const ExperimentConfig& cfg);

struct OracleCheck {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::string note;
};

struct CsvRow {
  std::string family;
  int n = 0;
  int k = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  double value = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();  // NaN prints empty
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  std::vector<CsvRow> rows;

  bool all_passed() const;
};

// Cross-module consistency battery: cost evaluators against each other, the
// truncated-adversary dominance and sandwich, three-case adversary
// feasibility and measured ratios, solver guarantees against the exact
// min-max, moment-compressed adversary exactness at high order, and
// serialization round-trips.  Sizes are clamped per check to each oracle's
// enumeration limit.
OracleReport run_oracle_suite(const ExperimentConfig& cfg);

std::string report_to_json(const GreedyRatioReport& report);
std::string report_to_json(const OracleReport& report);
std::string rows_to_csv(const std::vector<CsvRow>& rows);
std::vector<CsvRow> greedy_rows(const GreedyRatioReport& report);

}  // namespace drkofn
