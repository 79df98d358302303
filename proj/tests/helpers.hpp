#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "viewsel/model.hpp"

namespace viewsel::testutil {

inline AdNode n(NodeId id, std::optional<NodeId> parent, std::int64_t size,
                std::int64_t freq, std::int64_t cost_r, std::int64_t cost_a,
                bool selectable = true) {
  AdNode node;
  node.id = id;
  node.parent = parent;
  node.name = "n" + std::to_string(id);
  node.size = size;
  node.freq = freq;
  node.cost_r = cost_r;
  node.cost_a = cost_a;
  node.selectable = selectable;
  return node;
}

// Three-node reference instance: root r (id 1, freq 1, saving 1, size 6)
// with children x (id 2, freq 2, saving 2, size 2) and y (id 3, freq 1,
// saving 7, size 3). w = 12; the five antichains are {}, {r}, {x}, {y},
// {x,y}.
inline Instance r1(std::int64_t budget = 5) {
  std::vector<AdNode> nodes{
      n(1, std::nullopt, 6, 1, 1, 0),
      n(2, 1, 2, 2, 2, 0),
      n(3, 1, 3, 1, 7, 0),
  };
  return Instance(AdTree::build(std::move(nodes)), budget);
}

// The bookstore document whose edge table has exactly 14 rows.
inline constexpr std::string_view kBookstoreXml = R"(<bookstore>
  <book>
    <title>Database Systems</title>
    <author>
      <first>Michael</first>
      <last>Kifer</last>
    </author>
    <author>
      <first>Arthur</first>
      <last>Bernstein</last>
    </author>
    <author>
      <first>Philip</first>
      <last>Lewis</last>
    </author>
  </book>
  <book>
    <title>Querying the Semantic Web</title>
  </book>
</bookstore>
)";

}  // namespace viewsel::testutil
