#pragma once

#include <optional>
#include <string>

#include "viewsel/exact.hpp"
#include "viewsel/fptas.hpp"
#include "viewsel/model.hpp"

namespace viewsel {

/// Deterministic instance generator settings. Values are drawn from a
/// seeded engine; the same spec always yields the same instance.
struct GenSpec {
  enum class Family {
    random,           ///< uniform random attachment
    path,             ///< one chain (worst case for pruning depth)
    star,             ///< root with n-1 leaf children
    balanced_binary,  ///< complete binary tree in heap order
    knapsack_reduction,  ///< random knapsack mapped through knapsack_to_tree
  };

  Family family = Family::random;
  std::int64_t n = 1;  ///< nodes (items for knapsack_reduction)
  std::uint64_t seed = 0;

  std::int64_t freq_max = 9;  ///< freq ~ U[0, freq_max]
  std::int64_t cost_max = 9;  ///< cost_r ~ U[0, cost_max], cost_a ~ U[0, cost_r]
  std::int64_t size_max = 9;  ///< size ~ U[1, size_max]

  /// Explicit budget, else floor(budget_percent% of total selectable size).
  std::optional<std::int64_t> budget;
  int budget_percent = 25;

  static Family parse_family(const std::string& text);
};

Instance generate(const GenSpec& spec);

/// Hardness-reduction mapping: a balanced binary tree whose leaves carry the
/// knapsack items (freq 1, cost_r = profit, cost_a = 0, size = item size)
/// and whose internal nodes are unselectable sentinels of size capacity+1.
/// The tree optimum under budget = capacity equals the knapsack optimum.
/// Items of size 0 are rejected (selectable nodes need positive size).
Instance knapsack_to_tree(const KnapsackInstance& k);

/// One solver's outcome on an instance.
struct CompareRow {
  std::string solver;  ///< "brute", "dp" or "fptas"
  std::optional<Rational> epsilon;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  double runtime_ms = 0.0;
  /// lambda(exact) / lambda(solver); present when an exact oracle ran.
  std::optional<double> ratio;
  /// Longest pruned list seen (fptas rows only).
  std::optional<std::int64_t> max_list_len;
  /// Region count t1 of the run (fptas rows only).
  std::optional<std::int64_t> region_count;
};

struct CompareReport {
  std::vector<CompareRow> rows;

  std::string to_json() const;
  std::string to_text() const;
};

/// Runs the exact oracles that fit the instance plus the scheme at each
/// epsilon, and tabulates values, sizes, runtimes and list statistics.
CompareReport compare(const Instance& inst,
                      const std::vector<Rational>& epsilons,
                      Exec exec = Exec::serial);

}  // namespace viewsel
