#include "viewsel/exact.hpp"

#include <algorithm>

#include "viewsel/metrics.hpp"

namespace viewsel {

namespace {

int count_selectable(const AdTree& tree) {
  int n = 0;
  for (const AdNode& node : tree.nodes()) {
    n += node.selectable ? 1 : 0;
  }
  return n;
}

// Antichain enumerator: walks the preorder; at each node either selects it
// (jumping over its subtree) or descends. Keeps the best candidate under
// (max lambda, min mu, lexicographically smallest ids).
class AntichainSearch {
public:
  AntichainSearch(const Instance& inst, const std::vector<SubtreeAggregate>& aggs)
      : inst_(inst), aggs_(aggs) {
    preorder_.reserve(inst.tree.node_count());
    build_preorder(static_cast<std::int32_t>(inst.tree.root_index()));
    skip_to_.resize(preorder_.size());
    std::vector<std::int64_t> counts = inst.tree.subtree_node_counts();
    for (std::size_t p = 0; p < preorder_.size(); ++p) {
      skip_to_[p] = p + static_cast<std::size_t>(counts[preorder_[p]]);
    }
  }

  Solution run() {
    walk(0, 0, 0);
    std::sort(best_ids_.begin(), best_ids_.end());
    return Solution{Selection::of(best_ids_), best_lambda_, best_mu_};
  }

private:
  void build_preorder(std::int32_t v) {
    preorder_.push_back(v);
    for (std::int32_t c : inst_.tree.children_at(static_cast<std::size_t>(v))) {
      build_preorder(c);
    }
  }

  void consider(std::int64_t lambda, std::int64_t mu) {
    if (lambda < best_lambda_ || (lambda == best_lambda_ && mu > best_mu_)) {
      return;
    }
    if (lambda == best_lambda_ && mu == best_mu_ && !first_) {
      std::vector<NodeId> sorted = current_;
      std::sort(sorted.begin(), sorted.end());
      if (!(sorted < best_ids_)) {
        return;
      }
      best_ids_ = std::move(sorted);
      return;
    }
    first_ = false;
    best_lambda_ = lambda;
    best_mu_ = mu;
    best_ids_ = current_;
    std::sort(best_ids_.begin(), best_ids_.end());
  }

  void walk(std::size_t pos, std::int64_t lambda, std::int64_t mu) {
    if (pos == preorder_.size()) {
      consider(lambda, mu);
      return;
    }
    std::int32_t v = preorder_[pos];
    const AdNode& node = inst_.tree.node_at(static_cast<std::size_t>(v));
    // Not selecting v: descend into its children.
    walk(pos + 1, lambda, mu);
    if (node.selectable && mu + node.size <= inst_.budget) {
      current_.push_back(node.id);
      walk(skip_to_[pos], lambda + aggs_[v].profit, mu + node.size);
      current_.pop_back();
    }
  }

  const Instance& inst_;
  const std::vector<SubtreeAggregate>& aggs_;
  std::vector<std::int32_t> preorder_;
  std::vector<std::size_t> skip_to_;
  std::vector<NodeId> current_;
  std::vector<NodeId> best_ids_;
  std::int64_t best_lambda_ = 0;
  std::int64_t best_mu_ = 0;
  bool first_ = true;
};

}  // namespace

Solution brute_force(const Instance& inst, int cap) {
  int selectable = count_selectable(inst.tree);
  if (selectable > cap) {
    throw ResourceLimit("brute_force: " + std::to_string(selectable) +
                        " selectable nodes exceed cap " + std::to_string(cap) +
                        "; use dp_exact instead");
  }
  std::vector<SubtreeAggregate> aggs = subtree_aggregates(inst.tree);
  return AntichainSearch(inst, aggs).run();
}

Solution dp_exact(const Instance& inst, Exec exec) {
  const AdTree& tree = inst.tree;
  const std::int64_t n = static_cast<std::int64_t>(tree.node_count());
  const std::int64_t width = inst.budget + 1;
  if ((n + 1) * width > kDpCellCap) {
    throw ResourceLimit("dp_exact: table of " + std::to_string((n + 1) * width) +
                        " cells exceeds cap " + std::to_string(kDpCellCap));
  }

  std::vector<std::int32_t> order = tree.postorder();
  std::vector<std::int64_t> counts = tree.subtree_node_counts();
  std::vector<SubtreeAggregate> aggs = subtree_aggregates(tree);

  // row j = best over the first j postorder nodes; selecting the node at
  // position j excludes its whole subtree, i.e. jumps back counts[v] rows.
  std::vector<std::int64_t> table(static_cast<std::size_t>((n + 1) * width), 0);
  auto cell = [&](std::int64_t j, std::int64_t b) -> std::int64_t& {
    return table[static_cast<std::size_t>(j * width + b)];
  };

  for (std::int64_t j = 1; j <= n; ++j) {
    const std::int32_t v = order[static_cast<std::size_t>(j - 1)];
    const AdNode& node = tree.node_at(static_cast<std::size_t>(v));
    const std::int64_t jump = j - counts[v];
    const bool can_pick = node.selectable;
    const std::int64_t c = node.size;
    const std::int64_t p = aggs[v].profit;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel && width > 4096)
#endif
    for (std::int64_t b = 0; b < width; ++b) {
      std::int64_t best = cell(j - 1, b);
      if (can_pick && c <= b) {
        best = std::max(best, cell(jump, b - c) + p);
      }
      cell(j, b) = best;
    }
  }

  const std::int64_t opt = cell(n, inst.budget);
  // Smallest budget that still reaches the optimum = minimum mu over optima.
  std::int64_t used = inst.budget;
  while (used > 0 && cell(n, used - 1) == opt) {
    --used;
  }

  // Backtrack preferring "skip" on ties; any path reproduces the optimum.
  std::vector<NodeId> ids;
  std::int64_t j = n;
  std::int64_t b = used;
  while (j > 0) {
    if (cell(j, b) == cell(j - 1, b)) {
      --j;
      continue;
    }
    const std::int32_t v = order[static_cast<std::size_t>(j - 1)];
    const AdNode& node = tree.node_at(static_cast<std::size_t>(v));
    ids.push_back(node.id);
    b -= node.size;
    j -= counts[v];
  }
  std::int64_t mu = 0;
  for (NodeId id : ids) {
    mu += tree.node(id).size;
  }
  return Solution{Selection::of(std::move(ids)), opt, mu};
}

std::int64_t knapsack_brute(const KnapsackInstance& k, int cap) {
  if (static_cast<int>(k.items.size()) > cap) {
    throw ResourceLimit("knapsack_brute: " + std::to_string(k.items.size()) +
                        " items exceed cap " + std::to_string(cap));
  }
  for (const auto& item : k.items) {
    if (item.profit < 0 || item.size < 0) {
      throw InvalidInput("knapsack_brute: negative item values");
    }
  }
  if (k.capacity < 0) {
    throw InvalidInput("knapsack_brute: negative capacity");
  }
  std::int64_t best = 0;
  const std::size_t n = k.items.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::int64_t profit = 0;
    std::int64_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ull << i)) {
        profit += k.items[i].profit;
        size += k.items[i].size;
      }
    }
    if (size <= k.capacity) {
      best = std::max(best, profit);
    }
  }
  return best;
}

bool decide(const Instance& inst, std::int64_t goal) {
  if (goal < 0) {
    throw InvalidInput("decide: goal must be nonnegative");
  }
  if (goal == 0) {
    return true;  // the empty selection saves 0
  }
  Solution best = count_selectable(inst.tree) <= kBruteForceCap
                      ? brute_force(inst)
                      : dp_exact(inst);
  return best.lambda >= goal;
}

}  // namespace viewsel
