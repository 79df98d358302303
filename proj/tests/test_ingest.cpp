#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "viewsel/exact.hpp"
#include "viewsel/ingest.hpp"
#include "viewsel/io.hpp"
#include "viewsel/metrics.hpp"

using namespace viewsel;

namespace {

EdgeRow row(std::int64_t id, std::optional<std::int64_t> parent,
            const char* name, std::optional<std::string> content) {
  return EdgeRow{id, parent, name, std::move(content)};
}

std::string strip_ws(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      out += c;
    }
  }
  return out;
}

// Pretty-printed rendering of the first book subtree; the canonical
// serialization must agree with it once whitespace is ignored.
constexpr std::string_view kBookView = R"(<book>
  <title> Database Systems </title>
  <author>
    <first> Michael </first>
    <last> Kifer </last>
  </author>
  <author>
    <first> Arthur </first>
    <last> Bernstein </last>
  </author>
  <author>
    <first> Philip </first>
    <last> Lewis </last>
  </author>
</book>)";

}  // namespace

TEST_CASE("bookstore document shreds into the 14 golden edge rows") {
  XmlDocument doc = XmlDocument::parse(testutil::kBookstoreXml);
  std::vector<EdgeRow> expected{
      row(1, std::nullopt, "bookstore", std::nullopt),
      row(2, 1, "book", std::nullopt),
      row(3, 2, "title", "Database Systems"),
      row(4, 2, "author", std::nullopt),
      row(5, 4, "first", "Michael"),
      row(6, 4, "last", "Kifer"),
      row(7, 2, "author", std::nullopt),
      row(8, 7, "first", "Arthur"),
      row(9, 7, "last", "Bernstein"),
      row(10, 2, "author", std::nullopt),
      row(11, 10, "first", "Philip"),
      row(12, 10, "last", "Lewis"),
      row(13, 1, "book", std::nullopt),
      row(14, 13, "title", "Querying the Semantic Web"),
  };
  CHECK(doc.rows() == expected);
}

TEST_CASE("reconstruction view of the first book renders as expected") {
  XmlDocument doc = XmlDocument::parse(testutil::kBookstoreXml);
  CHECK(strip_ws(doc.serialize(2)) == strip_ws(kBookView));
  CHECK(doc.serialize(3) == "<title>Database Systems</title>");
  CHECK(doc.serialize(5) == "<first>Michael</first>");
}

TEST_CASE("sizes are canonical byte lengths, strictly shrinking downward") {
  XmlDocument doc = XmlDocument::parse(testutil::kBookstoreXml);
  CHECK(doc.size_of(3) == 31);
  for (const EdgeRow& r : doc.rows()) {
    CHECK(doc.size_of(r.id) ==
          static_cast<std::int64_t>(doc.serialize(r.id).size()));
    if (r.parent_id) {
      CHECK(doc.size_of(r.id) < doc.size_of(*r.parent_id));
    }
  }
}

TEST_CASE("small documents") {
  SUBCASE("self-closing root") {
    XmlDocument doc = XmlDocument::parse("<a/>");
    REQUIRE(doc.rows().size() == 1);
    CHECK(doc.rows()[0] == row(1, std::nullopt, "a", std::nullopt));
    CHECK(doc.serialize(1) == "<a></a>");
    CHECK(doc.size_of(1) == 7);
  }
  SUBCASE("two text children") {
    XmlDocument doc = XmlDocument::parse("<a><b>x</b><b>y</b></a>");
    std::vector<EdgeRow> expected{row(1, std::nullopt, "a", std::nullopt),
                                  row(2, 1, "b", "x"), row(3, 1, "b", "y")};
    CHECK(doc.rows() == expected);
  }
  SUBCASE("empty element pair") {
    XmlDocument doc = XmlDocument::parse("<a></a>");
    CHECK(doc.size_of(1) == 7);
  }
  SUBCASE("entities decode") {
    XmlDocument doc = XmlDocument::parse("<a>x &amp; y &lt;&#65;&gt;</a>");
    CHECK(doc.rows()[0].content == "x & y <A>");
    // serialization re-escapes, so parse(serialize) is stable
    XmlDocument again = XmlDocument::parse(doc.serialize(1));
    CHECK(again.rows()[0].content == doc.rows()[0].content);
  }
  SUBCASE("prolog and comments are skipped") {
    XmlDocument doc = XmlDocument::parse(
        "<?xml version=\"1.0\"?><!-- intro --><a><!-- x --><b>t</b></a>");
    REQUIRE(doc.rows().size() == 2);
    CHECK(doc.rows()[1].content == "t");
  }
  SUBCASE("attributes are ignored with a warning") {
    std::vector<std::string> warnings;
    XmlDocument doc = XmlDocument::parse("<a id=\"1\"><b k='2'>t</b></a>",
                                         &warnings);
    CHECK(doc.rows().size() == 2);
    CHECK(warnings.size() == 2);
    CHECK(warnings[0].find("attribute") != std::string::npos);
  }
}

TEST_CASE("parse errors carry byte offsets") {
  SUBCASE("unterminated element") {
    CHECK_THROWS_AS(XmlDocument::parse("<a><b>x</b>"), XmlParseError);
  }
  SUBCASE("mismatched close tag") {
    try {
      XmlDocument::parse("<a>text</b>");
      FAIL("expected XmlParseError");
    } catch (const XmlParseError& e) {
      CHECK(e.offset() == 9);
    }
  }
  SUBCASE("multiple roots") {
    CHECK_THROWS_WITH_AS(XmlDocument::parse("<a></a><b></b>"),
                         doctest::Contains("multiple root"), XmlParseError);
  }
  SUBCASE("mixed content") {
    CHECK_THROWS_WITH_AS(XmlDocument::parse("<a>t<b>u</b></a>"),
                         doctest::Contains("mixed content"), XmlParseError);
  }
  SUBCASE("empty document") {
    CHECK_THROWS_AS(XmlDocument::parse("   "), XmlParseError);
  }
  SUBCASE("doctype is unsupported") {
    CHECK_THROWS_AS(XmlDocument::parse("<!DOCTYPE a><a></a>"), XmlParseError);
  }
  SUBCASE("stray text after the root") {
    CHECK_THROWS_AS(XmlDocument::parse("<a></a>junk"), XmlParseError);
  }
}

TEST_CASE("parse then serialize reproduces an equivalent document") {
  XmlDocument doc = XmlDocument::parse(testutil::kBookstoreXml);
  XmlDocument again = XmlDocument::parse(doc.serialize(1));
  CHECK(again.rows() == doc.rows());
}

TEST_CASE("edge table CSV export") {
  XmlDocument doc = XmlDocument::parse(testutil::kBookstoreXml);
  std::string csv = doc.edge_table_csv();
  CHECK(csv.find("ID,parentID,name,content\n") == 0);
  CHECK(csv.find("1,,bookstore,\n") != std::string::npos);
  CHECK(csv.find("3,2,title,Database Systems\n") != std::string::npos);
  CHECK(csv.find("14,13,title,Querying the Semantic Web\n") !=
        std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 15);  // header + 14 rows

  XmlDocument quoted = XmlDocument::parse("<a><b>x, \"y\"</b></a>");
  CHECK(quoted.edge_table_csv().find("2,1,b,\"x, \"\"y\"\"\"") !=
        std::string::npos);
}

TEST_CASE("attach_workload assigns frequencies and costs") {
  XmlDocument doc = XmlDocument::parse(testutil::kBookstoreXml);

  SUBCASE("subtree-count model") {
    AdTree tree = attach_workload(doc, {{2, 5}, {13, 3}}, CostModel::subtree_count());
    CHECK(tree.node(2).cost_r == 11);  // elements 2..12
    CHECK(tree.node(2).cost_a == 1);
    CHECK(tree.node(3).cost_r == 1);  // leaf: reconstruction is one lookup
    CHECK(tree.node(3).cost_a == 1);
    CHECK(tree.node(3).saving() == 0);
    CHECK(tree.node(1).cost_r == 14);
    CHECK(tree.node(2).freq == 5);
    CHECK(tree.node(13).freq == 3);
    CHECK(tree.node(4).freq == 0);  // unlisted nodes default to zero
    CHECK(tree.node(2).size == doc.size_of(2));
  }

  SUBCASE("constant model") {
    AdTree tree = attach_workload(doc, {{2, 1}}, CostModel::constant(5, 2));
    for (const AdNode& node : tree.nodes()) {
      CHECK(node.saving() == 3);
    }
  }

  SUBCASE("explicit model must cover every element") {
    std::unordered_map<NodeId, std::pair<std::int64_t, std::int64_t>> costs;
    for (const EdgeRow& r : doc.rows()) {
      costs[r.id] = {4, 1};
    }
    AdTree tree = attach_workload(doc, {}, CostModel::explicit_costs(costs));
    CHECK(tree.node(7).saving() == 3);

    costs.erase(9);
    CHECK_THROWS_AS(
        attach_workload(doc, {}, CostModel::explicit_costs(costs)),
        InvalidInput);
  }

  SUBCASE("bad workloads are rejected") {
    CHECK_THROWS_AS(attach_workload(doc, {{99, 1}}, CostModel::subtree_count()),
                    InvalidInput);
    CHECK_THROWS_AS(attach_workload(doc, {{2, -1}}, CostModel::subtree_count()),
                    InvalidInput);
    CHECK_THROWS_AS(
        attach_workload(doc, {{2, 1}, {2, 2}}, CostModel::subtree_count()),
        InvalidInput);
  }

  SUBCASE("size monotonicity holds by construction") {
    AdTree tree = attach_workload(doc, {}, CostModel::subtree_count());
    CHECK(size_monotonicity_violations(tree).empty());
  }
}

TEST_CASE("cost model parsing") {
  CHECK(CostModel::parse("subtree-count").mode ==
        CostModel::Mode::subtree_count);
  CostModel cm = CostModel::parse("constant:5,2");
  CHECK(cm.mode == CostModel::Mode::constant);
  CHECK(cm.constant_r == 5);
  CHECK(cm.constant_a == 2);
  CHECK_THROWS_AS(CostModel::parse("constant:2,5"), InvalidInput);
  CHECK_THROWS_AS(CostModel::parse("constant:"), InvalidInput);
  CHECK_THROWS_AS(CostModel::parse("linear"), InvalidInput);
}

TEST_CASE("instance files round-trip byte for byte") {
  Instance inst = testutil::r1();
  std::string text = instance_to_json(inst);
  Instance back = instance_from_json(text);
  CHECK(instance_to_json(back) == text);
  CHECK(back.budget == inst.budget);
  CHECK(back.tree.node_count() == 3);

  // solver results survive the round trip
  CHECK(brute_force(back).lambda == brute_force(inst).lambda);
}

TEST_CASE("instance loading validates and warns") {
  SUBCASE("cyclic parents name a node") {
    std::string text = R"({"budget": 5, "nodes": [
      {"id": 1, "parent": 2, "name": "a", "size": 2, "freq": 0, "cost_r": 0,
       "cost_a": 0, "selectable": true},
      {"id": 2, "parent": 1, "name": "b", "size": 1, "freq": 0, "cost_r": 0,
       "cost_a": 0, "selectable": true}]})";
    CHECK_THROWS_WITH_AS(instance_from_json(text), doctest::Contains("cycle"),
                         InvalidInput);
  }
  SUBCASE("negative values are rejected") {
    std::string text = R"({"budget": 5, "nodes": [
      {"id": 1, "parent": null, "name": "a", "size": 2, "freq": -3,
       "cost_r": 0, "cost_a": 0, "selectable": true}]})";
    CHECK_THROWS_AS(instance_from_json(text), InvalidInput);
  }
  SUBCASE("monotonicity violations warn instead of failing") {
    std::string text = R"({"budget": 5, "nodes": [
      {"id": 1, "parent": null, "name": "a", "size": 2, "freq": 0,
       "cost_r": 0, "cost_a": 0, "selectable": true},
      {"id": 2, "parent": 1, "name": "b", "size": 9, "freq": 0,
       "cost_r": 0, "cost_a": 0, "selectable": true}]})";
    std::vector<std::string> warnings;
    Instance inst = instance_from_json(text, &warnings);
    CHECK(inst.tree.node_count() == 2);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("monotonicity") != std::string::npos);
  }
  SUBCASE("not json") {
    CHECK_THROWS_AS(instance_from_json("not json"), InvalidInput);
  }
}

TEST_CASE("workload and knapsack files") {
  auto entries = workload_from_json(R"([{"node_id": 2, "freq": 5}])");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].node_id == 2);
  CHECK(entries[0].freq == 5);
  CHECK_THROWS_AS(workload_from_json(R"({"node_id": 2})"), InvalidInput);

  KnapsackInstance k =
      knapsack_from_json(R"({"capacity": 7, "items": [[2,3],[3,4],[4,5]]})");
  CHECK(k.capacity == 7);
  REQUIRE(k.items.size() == 3);
  CHECK(k.items[1].profit == 3);
  CHECK(k.items[1].size == 4);

  KnapsackInstance bare = knapsack_from_json(R"([[2,3],[3,4]])");
  CHECK(bare.capacity == 0);
  CHECK(bare.items.size() == 2);

  CHECK(knapsack_from_json(knapsack_to_json(k)).items.size() == 3);
  CHECK_THROWS_AS(knapsack_from_json(R"({"items": [[1]]})"), InvalidInput);
}
