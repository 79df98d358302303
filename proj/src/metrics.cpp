#include "viewsel/metrics.hpp"

#include <algorithm>

namespace viewsel {

namespace {

// Marks the closure of sel in a flag vector indexed by node position.
std::vector<char> closure_flags(const AdTree& tree, const Selection& sel) {
  validate_selection(tree, sel);
  std::vector<char> in_closure(tree.node_count(), 0);
  std::vector<std::int32_t> stack;
  for (NodeId id : sel.ids()) {
    stack.push_back(static_cast<std::int32_t>(tree.index_of(id)));
  }
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    if (in_closure[v]) {
      continue;
    }
    in_closure[v] = 1;
    for (std::int32_t c : tree.children_at(static_cast<std::size_t>(v))) {
      stack.push_back(c);
    }
  }
  return in_closure;
}

}  // namespace

std::vector<NodeId> m_plus(const AdTree& tree, const Selection& sel) {
  std::vector<char> flags = closure_flags(tree, sel);
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) {
      out.push_back(tree.node_at(i).id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t profit_lambda(const AdTree& tree, const Selection& sel) {
  std::vector<char> flags = closure_flags(tree, sel);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) {
      const AdNode& n = tree.node_at(i);
      total += n.freq * n.saving();
    }
  }
  return total;
}

std::int64_t cost_tau(const AdTree& tree, const Selection& sel) {
  std::vector<char> flags = closure_flags(tree, sel);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const AdNode& n = tree.node_at(i);
    total += n.freq * (flags[i] ? n.cost_a : n.cost_r);
  }
  return total;
}

std::int64_t base_cost_w(const AdTree& tree) {
  std::int64_t total = 0;
  for (const AdNode& n : tree.nodes()) {
    total += n.freq * n.cost_r;
  }
  return total;
}

bool is_antichain(const AdTree& tree, const Selection& sel) {
  validate_selection(tree, sel);
  std::vector<char> selected(tree.node_count(), 0);
  for (NodeId id : sel.ids()) {
    selected[tree.index_of(id)] = 1;
  }
  for (NodeId id : sel.ids()) {
    std::int32_t v = tree.parent_index_at(tree.index_of(id));
    while (v >= 0) {
      if (selected[v]) {
        return false;
      }
      v = tree.parent_index_at(static_cast<std::size_t>(v));
    }
  }
  return true;
}

Selection minimalize(const AdTree& tree, const Selection& sel) {
  validate_selection(tree, sel);
  std::vector<char> selected(tree.node_count(), 0);
  for (NodeId id : sel.ids()) {
    selected[tree.index_of(id)] = 1;
  }
  std::vector<NodeId> kept;
  for (NodeId id : sel.ids()) {
    bool dominated = false;
    std::int32_t v = tree.parent_index_at(tree.index_of(id));
    while (v >= 0) {
      if (selected[v]) {
        dominated = true;
        break;
      }
      v = tree.parent_index_at(static_cast<std::size_t>(v));
    }
    if (!dominated) {
      kept.push_back(id);
    }
  }
  return Selection::of(std::move(kept));
}

std::vector<SubtreeAggregate> subtree_aggregates(const AdTree& tree) {
  std::vector<SubtreeAggregate> aggs(tree.node_count());
  for (std::int32_t v : tree.postorder()) {
    const AdNode& n = tree.node_at(static_cast<std::size_t>(v));
    std::int64_t profit = n.freq * n.saving();
    for (std::int32_t c : tree.children_at(static_cast<std::size_t>(v))) {
      profit += aggs[c].profit;
    }
    aggs[v] = {profit, n.size};
  }
  return aggs;
}

std::int64_t mat_size(const AdTree& tree, const Selection& sel) {
  validate_selection(tree, sel);
  std::int64_t total = 0;
  for (NodeId id : sel.ids()) {
    total += tree.node(id).size;
  }
  return total;
}

BigInt chi(const AdTree& tree, ChiMode mode) {
  // chi(v) = factor(v) * max over children chi(child); 1 at leaves.
  std::vector<BigInt> best(tree.node_count(), 1);
  for (std::int32_t v : tree.postorder()) {
    const auto& kids = tree.children_at(static_cast<std::size_t>(v));
    if (kids.empty()) {
      continue;
    }
    BigInt sub = 0;
    for (std::int32_t c : kids) {
      sub = std::max(sub, best[c]);
    }
    BigInt factor = static_cast<std::int64_t>(kids.size()) +
                    (mode == ChiMode::padded ? 1 : 0);
    best[v] = factor * sub;
  }
  return best[tree.root_index()];
}

}  // namespace viewsel
