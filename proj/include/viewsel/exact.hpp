#pragma once

#include <optional>

#include "viewsel/model.hpp"

namespace viewsel {

/// Plain 0/1 knapsack input; the target of the hardness reduction and the
/// source format for reduce-knapsack.
struct KnapsackInstance {
  struct Item {
    std::int64_t profit = 0;
    std::int64_t size = 0;
  };
  std::vector<Item> items;
  std::int64_t capacity = 0;
  std::optional<std::int64_t> goal;
};

/// Largest number of selectable nodes (or knapsack items) the exhaustive
/// solvers accept.
inline constexpr int kBruteForceCap = 22;

/// Largest DP table, in cells, dp_exact will allocate.
inline constexpr std::int64_t kDpCellCap = 20'000'000;

/// Exhaustive optimum over all antichain selections within budget. Ties go
/// to the smaller materialized size, then to the id-lexicographically
/// smallest selection. Throws ResourceLimit above `cap` selectable nodes.
Solution brute_force(const Instance& inst, int cap = kBruteForceCap);

/// Budget-indexed dynamic program over the postorder linearization:
/// selecting a node jumps over its whole subtree. O(n * budget) time and
/// space; same optimum value as brute_force, minimum-size among optima.
/// Throws ResourceLimit when the table would exceed kDpCellCap cells.
Solution dp_exact(const Instance& inst, Exec exec = Exec::serial);

/// Optimal knapsack value by subset enumeration (items capped like
/// brute_force).
std::int64_t knapsack_brute(const KnapsackInstance& k, int cap = kBruteForceCap);

/// Decision form: can a budget-feasible selection save at least `goal`?
/// Exact, desk scale only.
bool decide(const Instance& inst, std::int64_t goal);

}  // namespace viewsel
