#include "viewsel/normalize.hpp"

#include <algorithm>

namespace viewsel {

namespace {

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) {
    p <<= 1;
  }
  return p;
}

}  // namespace

NormalizedTree normalize(const AdTree& tree) {
  std::vector<AdNode> nodes = tree.nodes();
  NodeId next_id = 0;
  for (const AdNode& n : nodes) {
    next_id = std::max(next_id, n.id + 1);
  }
  const NodeId first_dummy = next_id;

  // Walk parents in stored order so dummy ids are deterministic.
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    std::size_t degree = tree.children_at(i).size();
    if (degree == 0) {
      continue;
    }
    for (std::size_t k = degree; k < next_pow2(degree); ++k) {
      AdNode dummy;
      dummy.id = next_id++;
      dummy.parent = tree.node_at(i).id;
      dummy.name = "_pad";
      dummy.size = 0;
      dummy.freq = 0;
      dummy.cost_r = 0;
      dummy.cost_a = 0;
      dummy.selectable = false;
      nodes.push_back(std::move(dummy));
    }
  }
  return NormalizedTree{AdTree::build(std::move(nodes)), first_dummy};
}

bool is_normalized(const AdTree& tree) {
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    std::size_t degree = tree.children_at(i).size();
    if (degree != 0 && next_pow2(degree) != degree) {
      return false;
    }
  }
  return true;
}

AdTree forest_to_tree(const std::vector<AdTree>& trees) {
  if (trees.empty()) {
    throw InvalidInput("forest_to_tree: empty tree list");
  }
  std::vector<AdNode> nodes;
  NodeId next_id = 0;
  std::int64_t total_size = 0;
  std::size_t total_nodes = 0;
  for (const AdTree& t : trees) {
    total_nodes += t.node_count();
  }
  nodes.reserve(total_nodes + 1);
  for (const AdTree& t : trees) {
    for (const AdNode& n : t.nodes()) {
      next_id = std::max(next_id, n.id + 1);
      total_size += n.size;
      nodes.push_back(n);
    }
  }

  AdNode root;
  root.id = next_id;
  root.name = "_forest_root";
  root.size = total_size + 1;  // sentinel: larger than everything below
  root.freq = 0;
  root.cost_r = 0;
  root.cost_a = 0;
  root.selectable = false;

  // Attach each tree's root to the new root.
  std::size_t offset = 0;
  for (const AdTree& t : trees) {
    nodes[offset + t.root_index()].parent = root.id;
    offset += t.node_count();
  }
  nodes.push_back(std::move(root));

  // AdTree::build rejects duplicate ids, which covers the disjointness
  // requirement across input trees.
  try {
    return AdTree::build(std::move(nodes));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("forest_to_tree: ") + e.what());
  }
}

}  // namespace viewsel
