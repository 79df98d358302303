#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace viewsel {

/// Bad instances, bad selections, bad arguments. CLI maps this to exit 2.
class InvalidInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation would exceed a size cap (enumeration or table too large).
/// CLI maps this to exit 3.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using NodeId = std::int64_t;

/// How work is scheduled inside solvers that have a parallel inner loop.
/// Results are identical either way.
enum class Exec {
  serial,
  parallel,
};

/// One XML element in the access/decision tree: storage footprint of its
/// materialized subtree, access frequency, and the two access costs
/// (unmaterialized vs materialized).
struct AdNode {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::string name;
  std::int64_t size = 0;
  std::int64_t freq = 0;
  std::int64_t cost_r = 0;
  std::int64_t cost_a = 0;
  /// false for padding dummies and sentinel roots; such nodes can never be
  /// part of a Selection.
  bool selectable = true;

  /// Cost saved per access once the node is covered by a materialization.
  std::int64_t saving() const { return cost_r - cost_a; }
};

/// Rooted ancestor-descendant tree. Immutable after build(); children are
/// kept in ascending id order, which equals document order for ingested
/// documents and makes every traversal deterministic.
class AdTree {
public:
  /// Validates structure (single root, parents exist, acyclic, reachable)
  /// and per-node invariants (nonnegative values, cost_a <= cost_r,
  /// size > 0 for selectable nodes). Throws InvalidInput.
  static AdTree build(std::vector<AdNode> nodes);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<AdNode>& nodes() const { return nodes_; }

  NodeId root_id() const { return nodes_[static_cast<std::size_t>(root_)].id; }
  bool contains(NodeId id) const { return index_.count(id) != 0; }
  const AdNode& node(NodeId id) const { return nodes_[index_of(id)]; }

  /// Position of a node in nodes() order; throws InvalidInput if unknown.
  std::size_t index_of(NodeId id) const;
  const AdNode& node_at(std::size_t i) const { return nodes_[i]; }
  std::size_t root_index() const { return static_cast<std::size_t>(root_); }
  /// Child indices, sorted by child id.
  const std::vector<std::int32_t>& children_at(std::size_t i) const {
    return children_[i];
  }
  /// -1 for the root.
  std::int32_t parent_index_at(std::size_t i) const { return parent_idx_[i]; }

  /// Node indices in postorder (children visited in id order).
  std::vector<std::int32_t> postorder() const;
  /// Number of nodes in the subtree rooted at each index.
  std::vector<std::int64_t> subtree_node_counts() const;

private:
  AdTree() = default;

  std::vector<AdNode> nodes_;
  std::unordered_map<NodeId, std::int32_t> index_;
  std::vector<std::vector<std::int32_t>> children_;
  std::vector<std::int32_t> parent_idx_;
  std::int32_t root_ = -1;
};

/// A set of node ids chosen for materialization. Stored sorted and
/// deduplicated. Validity against a tree (ids exist and are selectable) is
/// checked by the operations that consume it.
class Selection {
public:
  Selection() = default;
  static Selection of(std::vector<NodeId> ids);

  const std::vector<NodeId>& ids() const { return ids_; }
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  bool operator==(const Selection& other) const = default;

private:
  std::vector<NodeId> ids_;
};

/// Throws InvalidInput if any member is unknown or unselectable.
void validate_selection(const AdTree& tree, const Selection& sel);

/// A selection with its cached total saving (closure semantics) and
/// materialized size.
struct Solution {
  Selection selection;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;

  bool operator==(const Solution& other) const = default;
};

/// A tree plus the storage budget available for materialized subtrees.
struct Instance {
  AdTree tree;
  std::int64_t budget = 0;

  Instance(AdTree t, std::int64_t b);
};

/// Ancestor/descendant size monotonicity: size(descendant) < size(ancestor)
/// for selectable pairs. Holds by construction for ingested documents;
/// synthetic instances may violate it, so the check reports rather than
/// throws. Returns one message per offending node.
std::vector<std::string> size_monotonicity_violations(const AdTree& tree);

}  // namespace viewsel
