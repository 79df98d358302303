#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "viewsel/model.hpp"

namespace viewsel {

using BigInt = boost::multiprecision::cpp_int;

/// Closure of a selection: the selected nodes plus all their descendants
/// (the nodes whose access cost drops to cost_a). Returned sorted ascending.
std::vector<NodeId> m_plus(const AdTree& tree, const Selection& sel);

/// Total saving of a selection: sum over the closure of freq * saving().
std::int64_t profit_lambda(const AdTree& tree, const Selection& sel);

/// Total access cost under a selection; equals base_cost_w - profit_lambda.
std::int64_t cost_tau(const AdTree& tree, const Selection& sel);

/// Cost of the all-unmaterialized tree: sum of freq * cost_r.
std::int64_t base_cost_w(const AdTree& tree);

/// True iff no member is a (proper) ancestor of another member.
bool is_antichain(const AdTree& tree, const Selection& sel);

/// Drops every member that has an ancestor in the selection. The result is
/// an antichain with the same closure (hence the same profit) and no larger
/// materialized size.
Selection minimalize(const AdTree& tree, const Selection& sel);

/// Per-node view of the simplified selection problem: profit is the whole
/// subtree's saving, size the node's own (the stored size already denotes
/// the materialized-subtree footprint).
struct SubtreeAggregate {
  std::int64_t profit = 0;
  std::int64_t size = 0;
};

/// Aggregates for every node, indexed like tree.nodes().
std::vector<SubtreeAggregate> subtree_aggregates(const AdTree& tree);

/// Sum of sizes of the selected nodes themselves (no closure).
std::int64_t mat_size(const AdTree& tree, const Selection& sel);

enum class ChiMode {
  /// Largest product of child counts along a root-leaf path.
  plain,
  /// Same with (child count + 1) factors; governs the pruning depth of the
  /// approximation scheme.
  padded,
};

/// Exact value; grows exponentially with depth, hence the big integer.
BigInt chi(const AdTree& tree, ChiMode mode);

}  // namespace viewsel
