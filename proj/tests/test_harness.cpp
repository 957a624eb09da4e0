#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "drkofn/harness.hpp"
#include "drkofn/instance.hpp"

using namespace drkofn;

TEST_CASE("family names round-trip") {
  for (Family f : {Family::UniformRandom, Family::EpsilonBoundedRandom, Family::AppendixGreedy})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK_THROWS(family_from_name("no-such-family"));
}

TEST_CASE("gen_random is deterministic and honours the margin") {
  Instance a = gen_random(9, 3, 0.2, 77);
  Instance b = gen_random(9, 3, 0.2, 77);
  CHECK(a.cost == b.cost);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  Instance c = gen_random(9, 3, 0.2, 78);
  CHECK(a.lo != c.lo);

  CHECK_NOTHROW(validate(a));
  CHECK(epsilon_bound(a) >= 0.2);

  // The unit-cost flag replaces costs without disturbing the intervals.
  Instance u = gen_random(9, 3, 0.2, 77, true);
  CHECK(u.lo == a.lo);
  CHECK(u.hi == a.hi);
  for (double cv : u.cost) CHECK(cv == 1.0);
}

TEST_CASE("gen_bad_example block structure") {
  Instance inst = gen_bad_example({20, 0.1});
  CHECK_NOTHROW(validate(inst));
  CHECK(inst.n == 20);
  CHECK(inst.k == 5);

  int free_tests = 0, coins = 0, near_certain = 0;
  for (int i = 0; i < inst.n; ++i) {
    CHECK(inst.lo[i] == inst.hi[i]);
    if (inst.cost[i] == 0.0) {
      ++free_tests;
      CHECK(inst.lo[i] == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    } else {
      CHECK(inst.cost[i] == 1.0);
      if (inst.lo[i] == 0.5)
        ++coins;
      else
        ++near_certain;
    }
  }
  CHECK(free_tests == 16);
  CHECK(coins == 2);
  CHECK(near_certain == 2);
}

TEST_CASE("greedy ratio grows as the margin shrinks") {
  ExperimentConfig cfg;
  cfg.family = Family::AppendixGreedy;
  cfg.sizes = {200};
  cfg.epsilons = {0.2, 0.05};
  GreedyRatioReport report = run_greedy_ratio_experiment(cfg);
  REQUIRE(report.rows.size() == 2);
  for (const GreedyRatioRow& row : report.rows) {
    CHECK(row.ratio > 1.0);
    CHECK(row.greedy_cost == doctest::Approx(row.ratio * row.reference_cost).epsilon(1e-12));
  }
  CHECK(report.rows[1].ratio > report.rows[0].ratio);
}

TEST_CASE("oracle suite passes on a small configuration") {
  ExperimentConfig cfg;
  cfg.sizes = {6, 10};
  cfg.epsilons = {0.25};
  cfg.trials = 4;
  cfg.seed = 3;
  OracleReport report = run_oracle_suite(cfg);
  CHECK(report.all_passed());
  CHECK(report.checks.size() >= 10);
  for (const OracleCheck& check : report.checks) {
    CHECK(check.failed == 0);
    INFO(check.name, ": ", check.note);
    if (check.name != "approx-feasibility-ratio") CHECK(check.passed > 0);
  }
}

TEST_CASE("oracle suite reruns reproduce the same rows") {
  ExperimentConfig cfg;
  cfg.sizes = {10};
  cfg.epsilons = {0.25};
  cfg.trials = 3;
  cfg.seed = 11;
  OracleReport one = run_oracle_suite(cfg);
  OracleReport two = run_oracle_suite(cfg);
  CHECK(rows_to_csv(one.rows) == rows_to_csv(two.rows));
}

TEST_CASE("empty size list yields an empty passing report") {
  ExperimentConfig cfg;
  cfg.sizes = {};
  OracleReport report = run_oracle_suite(cfg);
  CHECK(report.all_passed());
  CHECK(report.rows.empty());
}

TEST_CASE("csv rows serialise NaN ratios as empty fields") {
  CsvRow row{"unit", 4, 2, 0.25, 9, "demo", 1.5, std::numeric_limits<double>::quiet_NaN()};
  std::string text = rows_to_csv({row});
  CHECK(text == "family,n,k,eps,seed,method,value,ratio\nunit,4,2,0.25,9,demo,1.5,\n");
  row.ratio = 2.0;
  CHECK(rows_to_csv({row}).find("1.5,2\n") != std::string::npos);
}
