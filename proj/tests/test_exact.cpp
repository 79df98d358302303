#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "viewsel/exact.hpp"
#include "viewsel/genbench.hpp"
#include "viewsel/metrics.hpp"

using namespace viewsel;
using testutil::n;

TEST_CASE("brute_force on the reference instance") {
  Instance inst = testutil::r1(5);
  Solution sol = brute_force(inst);
  CHECK(sol.selection == Selection::of({2, 3}));
  CHECK(sol.lambda == 11);
  CHECK(sol.mu == 5);

  Solution wider = brute_force(testutil::r1(6));
  CHECK(wider.selection == Selection::of({1}));
  CHECK(wider.lambda == 12);
  CHECK(wider.mu == 6);

  Solution zero = brute_force(testutil::r1(0));
  CHECK(zero.selection.empty());
  CHECK(zero.lambda == 0);
}

TEST_CASE("brute_force respects the selectable-node cap") {
  GenSpec spec;
  spec.family = GenSpec::Family::star;
  spec.n = 24;
  spec.seed = 3;
  Instance inst = generate(spec);
  CHECK_THROWS_AS(brute_force(inst), ResourceLimit);
  CHECK_THROWS_WITH_AS(brute_force(inst),
                       doctest::Contains("use dp_exact"), ResourceLimit);
  CHECK_NOTHROW(brute_force(inst, 24));
}

TEST_CASE("brute_force tie-breaking is deterministic") {
  // two leaves with identical profit and size
  AdTree tree = AdTree::build({n(1, std::nullopt, 9, 0, 0, 0),
                               n(2, 1, 3, 1, 4, 0), n(3, 1, 3, 1, 4, 0)});
  Solution sol = brute_force(Instance(tree, 3));
  CHECK(sol.lambda == 4);
  CHECK(sol.selection == Selection::of({2}));  // lexicographically first
}

TEST_CASE("dp_exact matches brute_force on the reference instance") {
  CHECK(dp_exact(testutil::r1(5)).lambda == 11);
  CHECK(dp_exact(testutil::r1(6)).lambda == 12);
  CHECK(dp_exact(testutil::r1(0)).lambda == 0);
}

TEST_CASE("dp_exact rejects oversized tables") {
  Instance inst = testutil::r1(5);
  Instance huge(inst.tree, kDpCellCap);
  CHECK_THROWS_AS(dp_exact(huge), ResourceLimit);
}

TEST_CASE("density greedy is beaten by the exact solvers") {
  // On a chain only one node can be selected. The deepest node has the best
  // profit density (5/5) but the middle one saves more in total (6 <= 10).
  AdTree tree = AdTree::build({n(1, std::nullopt, 12, 1, 1, 0),
                               n(2, 1, 10, 1, 1, 0), n(3, 2, 5, 1, 5, 0)});
  Instance inst(tree, 10);
  auto aggs = subtree_aggregates(inst.tree);
  // greedy by profit density picks node 3 first and then nothing else fits
  CHECK(aggs[inst.tree.index_of(3)].profit * 10 >
        aggs[inst.tree.index_of(2)].profit * 5);
  std::int64_t greedy = profit_lambda(inst.tree, Selection::of({3}));
  CHECK(greedy == 5);
  CHECK(dp_exact(inst).lambda == 6);
  CHECK(brute_force(inst).lambda == 6);
}

TEST_CASE("solvers agree with the subset oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GenSpec spec;
    spec.family = static_cast<GenSpec::Family>(seed % 4);
    spec.n = 1 + static_cast<std::int64_t>(seed % 11);
    spec.seed = seed;
    spec.size_max = 12;
    Instance inst = generate(spec);

    auto expected = testutil::oracle_best(inst);
    Solution brute = brute_force(inst);
    Solution dp = dp_exact(inst);

    CHECK(brute.lambda == expected.lambda);
    CHECK(brute.mu == expected.mu);
    CHECK(dp.lambda == expected.lambda);
    CHECK(dp.mu == expected.mu);
  }
}

TEST_CASE("returned solutions are feasible antichains with true caches") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec spec;
    spec.family = GenSpec::Family::random;
    spec.n = 1 + static_cast<std::int64_t>(seed % 14);
    spec.seed = seed * 31;
    Instance inst = generate(spec);
    for (const Solution& sol : {brute_force(inst), dp_exact(inst)}) {
      CHECK(is_antichain(inst.tree, sol.selection));
      CHECK(sol.mu <= inst.budget);
      CHECK(sol.lambda == profit_lambda(inst.tree, sol.selection));
      CHECK(sol.mu == mat_size(inst.tree, sol.selection));
    }
  }
}

TEST_CASE("brute_force value is monotone in the budget") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec;
    spec.family = GenSpec::Family::random;
    spec.n = 1 + static_cast<std::int64_t>(seed % 10);
    spec.seed = seed * 7;
    Instance inst = generate(spec);
    std::int64_t prev = -1;
    for (std::int64_t budget = 0; budget <= 30; budget += 3) {
      std::int64_t value = brute_force(Instance(inst.tree, budget)).lambda;
      CHECK(value >= prev);
      prev = value;
    }
  }
}

TEST_CASE("dp_exact runs in parallel with identical results") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenSpec spec;
    spec.family = GenSpec::Family::random;
    spec.n = 60;
    spec.seed = seed;
    spec.size_max = 40;
    spec.budget = 6000;  // wide enough to engage the parallel row loop
    Instance inst = generate(spec);
    Solution serial = dp_exact(inst, Exec::serial);
    Solution parallel = dp_exact(inst, Exec::parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("knapsack_brute") {
  KnapsackInstance k;
  k.items = {{2, 3}, {3, 4}, {4, 5}};
  k.capacity = 7;
  CHECK(knapsack_brute(k) == 5);

  KnapsackInstance zero;
  zero.items = {{5, 2}, {7, 3}};
  zero.capacity = 0;
  CHECK(knapsack_brute(zero) == 0);

  KnapsackInstance single;
  single.items = {{9, 4}};
  single.capacity = 4;
  CHECK(knapsack_brute(single) == 9);

  KnapsackInstance big;
  big.items.assign(23, {1, 1});
  big.capacity = 5;
  CHECK_THROWS_AS(knapsack_brute(big), ResourceLimit);
}

TEST_CASE("decide answers the saving-goal question") {
  Instance inst = testutil::r1(5);
  CHECK(decide(inst, 11));
  CHECK_FALSE(decide(inst, 12));
  CHECK(decide(inst, 0));
  CHECK_THROWS_AS(decide(inst, -1), InvalidInput);
}
