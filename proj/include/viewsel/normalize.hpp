#pragma once

#include "viewsel/model.hpp"

namespace viewsel {

/// A tree whose every internal node has a power-of-two child count, obtained
/// by appending zero-cost unselectable dummy leaves. Real nodes keep their
/// original ids, so solutions map back unchanged.
struct NormalizedTree {
  AdTree tree;
  /// Ids at or above this value are padding dummies.
  NodeId first_dummy_id = 0;

  bool is_dummy(NodeId id) const { return id >= first_dummy_id; }
};

/// Pads child counts up to the next power of two. At most doubles the node
/// count and does not change the optimum of any instance.
NormalizedTree normalize(const AdTree& tree);

/// True iff every internal node has a power-of-two child count.
bool is_normalized(const AdTree& tree);

/// Joins trees under a fresh unselectable root so a multi-tree instance can
/// be solved by the single-tree machinery. Node ids must be disjoint across
/// the input trees; the new root gets id max+1 and a sentinel size larger
/// than the combined size of everything below it.
AdTree forest_to_tree(const std::vector<AdTree>& trees);

}  // namespace viewsel
