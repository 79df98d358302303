#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "viewsel/model.hpp"

namespace viewsel {

/// Relational (edge-table) form of one XML element: id, parent id, tag name
/// and text content. Ids are assigned in document order starting at 1.
struct EdgeRow {
  std::int64_t id = 0;
  std::optional<std::int64_t> parent_id;
  std::string name;
  std::optional<std::string> content;

  bool operator==(const EdgeRow&) const = default;
};

/// Per-node access frequency of the workload.
struct WorkloadEntry {
  NodeId node_id = 0;
  std::int64_t freq = 0;
};

/// How cost_r/cost_a are assigned when building an instance from a document.
struct CostModel {
  enum class Mode {
    /// cost_r = number of elements in the subtree (a proxy for the
    /// self-joins needed to rebuild it), cost_a = 1.
    subtree_count,
    /// Fixed (cost_r, cost_a) for every node.
    constant,
    /// Per-node values; must cover every element.
    explicit_costs,
  };

  Mode mode = Mode::subtree_count;
  std::int64_t constant_r = 0;
  std::int64_t constant_a = 0;
  std::unordered_map<NodeId, std::pair<std::int64_t, std::int64_t>> per_node;

  static CostModel subtree_count() { return CostModel{}; }
  static CostModel constant(std::int64_t r, std::int64_t a);
  static CostModel explicit_costs(
      std::unordered_map<NodeId, std::pair<std::int64_t, std::int64_t>> costs);
  /// Accepts "subtree-count" or "constant:R,A".
  static CostModel parse(const std::string& text);
};

/// Malformed XML; position is the byte offset of the problem.
class XmlParseError : public InvalidInput {
public:
  XmlParseError(std::size_t offset, const std::string& what)
      : InvalidInput("parse error at byte " + std::to_string(offset) + ": " +
                     what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// An element/text tree parsed from an XML document, holding the edge-table
/// rows plus the canonical subtree serializations' byte sizes. Attributes,
/// comments and processing instructions are skipped (with a warning for
/// attributes); mixed content is rejected.
class XmlDocument {
public:
  static XmlDocument parse(std::string_view xml,
                           std::vector<std::string>* warnings = nullptr);

  /// Edge-table rows in document order.
  const std::vector<EdgeRow>& rows() const { return rows_; }
  bool contains(std::int64_t id) const;

  /// Canonical serialization of the subtree rooted at `id`: open tag, text
  /// content or children one per line, close tag, no indentation.
  std::string serialize(std::int64_t id) const;

  /// Byte length of serialize(id) for every element, keyed by id. Strictly
  /// decreasing from parent to child by construction.
  const std::vector<std::int64_t>& sizes() const { return sizes_; }
  std::int64_t size_of(std::int64_t id) const;

  /// CSV rendering of the edge table (header ID,parentID,name,content;
  /// NULL as empty field).
  std::string edge_table_csv() const;

private:
  XmlDocument() = default;
  std::size_t index_of(std::int64_t id) const;
  void append_serialized(std::size_t idx, std::string& out) const;

  std::vector<EdgeRow> rows_;
  std::vector<std::vector<std::int32_t>> children_;  // by row index
  std::vector<std::int64_t> sizes_;
};

/// Builds the solver-ready tree: structure and sizes from the document,
/// frequencies from the workload (absent nodes default to 0), costs from
/// the cost model. Throws InvalidInput on unresolved workload entries or a
/// model yielding cost_a > cost_r.
AdTree attach_workload(const XmlDocument& doc,
                       const std::vector<WorkloadEntry>& entries,
                       const CostModel& cm);

}  // namespace viewsel
