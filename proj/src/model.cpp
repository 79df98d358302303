#include "viewsel/model.hpp"

#include <algorithm>
#include <deque>

namespace viewsel {

namespace {

std::string id_str(NodeId id) { return std::to_string(id); }

// Guards the integer arithmetic everywhere downstream: lambda is bounded by
// sum(freq * cost_r) and mu by sum(size), so once both totals fit in 62 bits
// all later additions stay in range.
void check_totals(const std::vector<AdNode>& nodes) {
  constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
  __int128 total_cost = 0;
  __int128 total_size = 0;
  for (const AdNode& n : nodes) {
    total_cost += static_cast<__int128>(n.freq) * n.cost_r;
    total_size += n.size;
    if (total_cost >= kLimit || total_size >= kLimit) {
      throw InvalidInput("instance values too large: totals exceed 2^62");
    }
  }
}

}  // namespace

AdTree AdTree::build(std::vector<AdNode> nodes) {
  if (nodes.empty()) {
    throw InvalidInput("tree must contain at least one node");
  }

  AdTree tree;
  tree.nodes_ = std::move(nodes);
  tree.index_.reserve(tree.nodes_.size());

  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    const AdNode& n = tree.nodes_[i];
    if (n.id < 0) {
      throw InvalidInput("negative node id " + id_str(n.id));
    }
    if (!tree.index_.emplace(n.id, static_cast<std::int32_t>(i)).second) {
      throw InvalidInput("duplicate node id " + id_str(n.id));
    }
    if (n.freq < 0 || n.cost_r < 0 || n.cost_a < 0 || n.size < 0) {
      throw InvalidInput("negative value on node " + id_str(n.id));
    }
    if (n.cost_a > n.cost_r) {
      throw InvalidInput("cost_a exceeds cost_r on node " + id_str(n.id));
    }
    if (n.selectable && n.size <= 0) {
      throw InvalidInput("selectable node " + id_str(n.id) +
                         " must have positive size");
    }
  }
  check_totals(tree.nodes_);

  tree.children_.resize(tree.nodes_.size());
  tree.parent_idx_.assign(tree.nodes_.size(), -1);
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    const AdNode& n = tree.nodes_[i];
    if (!n.parent) {
      if (tree.root_ >= 0) {
        throw InvalidInput("multiple roots: nodes " +
                           id_str(tree.nodes_[tree.root_].id) + " and " +
                           id_str(n.id));
      }
      tree.root_ = static_cast<std::int32_t>(i);
      continue;
    }
    auto it = tree.index_.find(*n.parent);
    if (it == tree.index_.end()) {
      throw InvalidInput("node " + id_str(n.id) + " references missing parent " +
                         id_str(*n.parent));
    }
    if (it->second == static_cast<std::int32_t>(i)) {
      throw InvalidInput("cycle detected at node " + id_str(n.id));
    }
    tree.children_[it->second].push_back(static_cast<std::int32_t>(i));
    tree.parent_idx_[i] = it->second;
  }
  if (tree.root_ < 0) {
    throw InvalidInput("no root node (every node has a parent); cycle through node " +
                       id_str(tree.nodes_[0].id));
  }

  for (auto& kids : tree.children_) {
    std::sort(kids.begin(), kids.end(), [&](std::int32_t a, std::int32_t b) {
      return tree.nodes_[a].id < tree.nodes_[b].id;
    });
  }

  // Every node has a parent chain, so an unreachable node implies a cycle.
  std::vector<char> seen(tree.nodes_.size(), 0);
  std::deque<std::int32_t> queue{tree.root_};
  seen[tree.root_] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::int32_t v = queue.front();
    queue.pop_front();
    for (std::int32_t c : tree.children_[v]) {
      if (!seen[c]) {
        seen[c] = 1;
        ++reached;
        queue.push_back(c);
      }
    }
  }
  if (reached != tree.nodes_.size()) {
    for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
      if (!seen[i]) {
        throw InvalidInput("cycle detected through node " +
                           id_str(tree.nodes_[i].id));
      }
    }
  }
  return tree;
}

std::size_t AdTree::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InvalidInput("unknown node id " + id_str(id));
  }
  return static_cast<std::size_t>(it->second);
}

std::vector<std::int32_t> AdTree::postorder() const {
  std::vector<std::int32_t> order;
  order.reserve(nodes_.size());
  // Explicit stack; (node, next-child-position) pairs.
  std::vector<std::pair<std::int32_t, std::size_t>> stack;
  stack.emplace_back(root_, 0);
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    if (pos < children_[v].size()) {
      std::int32_t c = children_[v][pos++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
  return order;
}

std::vector<std::int64_t> AdTree::subtree_node_counts() const {
  std::vector<std::int64_t> count(nodes_.size(), 1);
  for (std::int32_t v : postorder()) {
    for (std::int32_t c : children_[v]) {
      count[v] += count[c];
    }
  }
  return count;
}

Selection Selection::of(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Selection sel;
  sel.ids_ = std::move(ids);
  return sel;
}

void validate_selection(const AdTree& tree, const Selection& sel) {
  for (NodeId id : sel.ids()) {
    if (!tree.contains(id)) {
      throw InvalidInput("invalid selection: unknown node id " + id_str(id));
    }
    if (!tree.node(id).selectable) {
      throw InvalidInput("invalid selection: node " + id_str(id) +
                         " is not selectable");
    }
  }
}

Instance::Instance(AdTree t, std::int64_t b) : tree(std::move(t)), budget(b) {
  if (budget < 0) {
    throw InvalidInput("budget must be nonnegative");
  }
}

std::vector<std::string> size_monotonicity_violations(const AdTree& tree) {
  std::vector<std::string> out;
  // DFS carrying the smallest selectable ancestor size seen so far.
  constexpr std::int64_t kNone = -1;
  std::vector<std::pair<std::int32_t, std::int64_t>> stack;
  stack.emplace_back(static_cast<std::int32_t>(tree.root_index()), kNone);
  while (!stack.empty()) {
    auto [v, min_anc] = stack.back();
    stack.pop_back();
    const AdNode& n = tree.node_at(static_cast<std::size_t>(v));
    std::int64_t next_min = min_anc;
    if (n.selectable) {
      if (min_anc != kNone && n.size >= min_anc) {
        out.push_back("size monotonicity violated at node " +
                      std::to_string(n.id) + ": size " +
                      std::to_string(n.size) +
                      " not smaller than selectable ancestor size " +
                      std::to_string(min_anc));
      }
      next_min = (min_anc == kNone) ? n.size : std::min(min_anc, n.size);
    }
    for (std::int32_t c : tree.children_at(static_cast<std::size_t>(v))) {
      stack.emplace_back(c, next_min);
    }
  }
  return out;
}

}  // namespace viewsel
