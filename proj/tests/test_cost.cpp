#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "drkofn/cost.hpp"
#include "drkofn/instance.hpp"
#include "drkofn/rng.hpp"
#include "helpers.hpp"

using namespace drkofn;

TEST_CASE("expected_cost hand-checked example") {
  // Unit costs, k = 2 of 3, p = 1/2: first two tests always run, the third
  // runs only when they split, so the total is 1 + 1 + 1/2.
  Instance inst{3, 2, {1, 1, 1}, {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}};
  std::vector<double> p{0.5, 0.5, 0.5};
  CostBreakdown b = expected_cost(inst, identity_permutation(3), p);
  CHECK(b.total == doctest::Approx(2.5).epsilon(1e-15));
  REQUIRE(b.stages.size() == 3);
  CHECK(b.stages[0].continue_probability == 1.0);
  CHECK(b.stages[1].continue_probability == 1.0);
  CHECK(b.stages[2].continue_probability == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("single test always runs") {
  Instance inst{1, 1, {2.5}, {0.3}, {0.3}};
  std::vector<double> p{0.3};
  CHECK(expected_cost(inst, {0}, p).total == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("expected_cost matches outcome enumeration") {
  SplitMix64 g(stream_seed(201, 0));
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(g.bounded(10));
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = testutil::random_instance(g, n, k, 0.0);
    Permutation perm = testutil::random_perm(g, n);
    std::vector<double> p = testutil::random_point(g, inst);
    double fast = expected_cost(inst, perm, p).total;
    double oracle = brute_force_cost(inst, perm, p);
    CHECK(fast == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("expected_cost_total reproduces the breakdown total bit for bit") {
  SplitMix64 g(stream_seed(202, 0));
  std::vector<double> row;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(g.bounded(12));
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = testutil::random_instance(g, n, k, 0.0);
    Permutation perm = testutil::random_perm(g, n);
    std::vector<double> p = testutil::random_point(g, inst);
    CHECK(expected_cost_total(inst, perm, p, row) == expected_cost(inst, perm, p).total);
  }
}

TEST_CASE("cost is affine in each coordinate") {
  SplitMix64 g(stream_seed(203, 0));
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(g.bounded(8));
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = testutil::random_instance(g, n, k, 0.0);
    Permutation perm = testutil::random_perm(g, n);
    std::vector<double> p = testutil::random_point(g, inst);
    int i = static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));

    std::vector<double> a = p, b = p, mid = p;
    a[i] = 0.1;
    b[i] = 0.9;
    mid[i] = 0.5;
    double ca = expected_cost(inst, perm, a).total;
    double cb = expected_cost(inst, perm, b).total;
    double cmid = expected_cost(inst, perm, mid).total;
    CHECK(cmid == doctest::Approx(0.5 * (ca + cb)).epsilon(1e-12));
  }
}

TEST_CASE("total lies between the first cost and the cost sum") {
  SplitMix64 g(stream_seed(204, 0));
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(g.bounded(12));
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = testutil::random_instance(g, n, k, 0.0);
    Permutation perm = testutil::random_perm(g, n);
    std::vector<double> p = testutil::random_point(g, inst);
    CostBreakdown b = expected_cost(inst, perm, p);
    double sum = std::accumulate(inst.cost.begin(), inst.cost.end(), 0.0);
    CHECK(b.total >= inst.cost[perm[0]] - 1e-12);
    CHECK(b.total <= sum + 1e-12);

    // Reaching stage nu+1 implies reaching stage nu.
    for (std::size_t s = 1; s < b.stages.size(); ++s)
      CHECK(b.stages[s].continue_probability <= b.stages[s - 1].continue_probability + 1e-12);
    CHECK(b.stages[0].continue_probability == 1.0);
  }
}

TEST_CASE("expected_cost validates its inputs") {
  Instance inst{2, 1, {1, 1}, {0.1, 0.1}, {0.9, 0.9}};
  std::vector<double> p{0.5, 0.5};
  CHECK_THROWS(expected_cost(inst, {0}, p));                              // short perm
  CHECK_THROWS(expected_cost(inst, {0, 0}, p));                           // duplicate
  CHECK_THROWS(expected_cost(inst, {0, 1}, std::vector<double>{0.5}));    // short p
  CHECK_THROWS(expected_cost(inst, {0, 1}, std::vector<double>{0.5, 2.0}));
}

TEST_CASE("monte_carlo_cost is deterministic and consistent") {
  SplitMix64 g(stream_seed(205, 0));
  for (int trial = 0; trial < 5; ++trial) {
    int n = 2 + static_cast<int>(g.bounded(8));
    int k = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n)));
    Instance inst = testutil::random_instance(g, n, k, 0.0);
    Permutation perm = testutil::random_perm(g, n);
    std::vector<double> p = testutil::random_point(g, inst);

    McEstimate one = monte_carlo_cost(inst, perm, p, 200000, 99);
    McEstimate two = monte_carlo_cost(inst, perm, p, 200000, 99);
    CHECK(one.value == two.value);
    CHECK(one.std_error == two.std_error);

    double exact = expected_cost(inst, perm, p).total;
    CHECK(std::abs(one.value - exact) <= 4.0 * one.std_error + 1e-12);
  }
}

TEST_CASE("monte_carlo_cost with deterministic outcomes has zero spread") {
  // p = 1 everywhere: the run stops after k passes, every trial pays the same.
  Instance inst{4, 2, {1, 2, 3, 4}, {1, 1, 1, 1}, {1, 1, 1, 1}};
  std::vector<double> p{1, 1, 1, 1};
  McEstimate est = monte_carlo_cost(inst, identity_permutation(4), p, 10000, 5);
  CHECK(est.value == doctest::Approx(3.0).epsilon(1e-15));  // costs 1 + 2
  CHECK(est.std_error == 0.0);
}

TEST_CASE("monte carlo respects the thread override") {
  Instance inst{5, 2, {1, 1, 1, 1, 1}, {0.2, 0.2, 0.2, 0.2, 0.2}, {0.8, 0.8, 0.8, 0.8, 0.8}};
  std::vector<double> p{0.3, 0.4, 0.5, 0.6, 0.7};
  setenv("DRKOFN_THREADS", "1", 1);
  McEstimate serial = monte_carlo_cost(inst, identity_permutation(5), p, 300000, 7);
  setenv("DRKOFN_THREADS", "4", 1);
  McEstimate threaded = monte_carlo_cost(inst, identity_permutation(5), p, 300000, 7);
  unsetenv("DRKOFN_THREADS");
  CHECK(serial.value == threaded.value);
  CHECK(serial.std_error == threaded.std_error);
}
