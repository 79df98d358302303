#include "viewsel/ingest.hpp"

#include <algorithm>
#include <cctype>

namespace viewsel {

CostModel CostModel::constant(std::int64_t r, std::int64_t a) {
  if (r < 0 || a < 0 || a > r) {
    throw InvalidInput("invalid cost model: need 0 <= cost_a <= cost_r");
  }
  CostModel cm;
  cm.mode = Mode::constant;
  cm.constant_r = r;
  cm.constant_a = a;
  return cm;
}

CostModel CostModel::explicit_costs(
    std::unordered_map<NodeId, std::pair<std::int64_t, std::int64_t>> costs) {
  for (const auto& [id, rc] : costs) {
    if (rc.first < 0 || rc.second < 0 || rc.second > rc.first) {
      throw InvalidInput("invalid cost model: node " + std::to_string(id) +
                         " has cost_a > cost_r");
    }
  }
  CostModel cm;
  cm.mode = Mode::explicit_costs;
  cm.per_node = std::move(costs);
  return cm;
}

CostModel CostModel::parse(const std::string& text) {
  if (text == "subtree-count") {
    return subtree_count();
  }
  if (text.rfind("constant:", 0) == 0) {
    std::string rest = text.substr(9);
    std::size_t comma = rest.find(',');
    if (comma != std::string::npos) {
      try {
        std::int64_t r = std::stoll(rest.substr(0, comma));
        std::int64_t a = std::stoll(rest.substr(comma + 1));
        return constant(r, a);
      } catch (const std::logic_error&) {
        // fall through to the error below
      }
    }
    throw InvalidInput("cost model 'constant' needs the form constant:R,A");
  }
  throw InvalidInput("unknown cost model '" + text +
                     "' (expected subtree-count or constant:R,A)");
}

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_ws(s[b])) {
    ++b;
  }
  while (e > b && is_ws(s[e - 1])) {
    --e;
  }
  return s.substr(b, e - b);
}

// Recursive-descent parser for the element/text subset this model covers.
// Attributes are skipped with a warning; comments and processing
// instructions are skipped; mixed content and doctypes are rejected.
class Parser {
public:
  Parser(std::string_view text, std::vector<std::string>* warnings)
      : text_(text), warnings_(warnings) {}

  struct Result {
    std::vector<EdgeRow> rows;
    std::vector<std::vector<std::int32_t>> children;
  };

  Result run() {
    skip_misc();
    if (eof()) {
      throw XmlParseError(pos_, "document has no root element");
    }
    parse_element(std::nullopt);
    skip_misc();
    if (!eof()) {
      if (peek() == '<') {
        throw XmlParseError(pos_, "invalid document: multiple root elements");
      }
      throw XmlParseError(pos_, "trailing content after root element");
    }
    return Result{std::move(rows_), std::move(children_)};
  }

private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  void warn(const std::string& msg) {
    if (warnings_) {
      warnings_->push_back(msg);
    }
  }

  // Whitespace, comments and processing instructions between elements.
  void skip_misc() {
    for (;;) {
      while (!eof() && is_ws(peek())) {
        ++pos_;
      }
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<?")) {
        skip_pi();
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    std::size_t start = pos_;
    pos_ += 4;
    std::size_t end = text_.find("-->", pos_);
    if (end == std::string_view::npos) {
      throw XmlParseError(start, "unterminated comment");
    }
    pos_ = end + 3;
  }

  void skip_pi() {
    std::size_t start = pos_;
    pos_ += 2;
    std::size_t end = text_.find("?>", pos_);
    if (end == std::string_view::npos) {
      throw XmlParseError(start, "unterminated processing instruction");
    }
    pos_ = end + 2;
  }

  std::string parse_name() {
    if (eof() || !is_name_start(peek())) {
      throw XmlParseError(pos_, "expected a name");
    }
    std::size_t start = pos_;
    while (!eof() && is_name_char(peek())) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Consumes attributes up to '>' or '/>'. Returns true for self-closing.
  bool parse_tag_rest(const std::string& name) {
    bool warned = false;
    for (;;) {
      while (!eof() && is_ws(peek())) {
        ++pos_;
      }
      if (eof()) {
        throw XmlParseError(pos_, "unterminated start tag <" + name);
      }
      if (peek() == '>') {
        ++pos_;
        return false;
      }
      if (starts_with("/>")) {
        pos_ += 2;
        return true;
      }
      std::size_t attr_at = pos_;
      std::string attr = parse_name();
      while (!eof() && is_ws(peek())) {
        ++pos_;
      }
      if (eof() || peek() != '=') {
        throw XmlParseError(attr_at, "malformed attribute '" + attr + "'");
      }
      ++pos_;
      while (!eof() && is_ws(peek())) {
        ++pos_;
      }
      if (eof() || (peek() != '"' && peek() != '\'')) {
        throw XmlParseError(pos_, "attribute value must be quoted");
      }
      char quote = peek();
      ++pos_;
      std::size_t end = text_.find(quote, pos_);
      if (end == std::string_view::npos) {
        throw XmlParseError(pos_, "unterminated attribute value");
      }
      pos_ = end + 1;
      if (!warned) {
        warn("ignoring attributes on element <" + name + ">");
        warned = true;
      }
    }
  }

  std::string decode_entity() {
    std::size_t start = pos_;  // at '&'
    std::size_t end = text_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12) {
      throw XmlParseError(start, "malformed entity reference");
    }
    std::string_view ent = text_.substr(pos_ + 1, end - pos_ - 1);
    pos_ = end + 1;
    std::string out;
    if (ent == "lt") {
      out = "<";
    } else if (ent == "gt") {
      out = ">";
    } else if (ent == "amp") {
      out = "&";
    } else if (ent == "quot") {
      out = "\"";
    } else if (ent == "apos") {
      out = "'";
    } else if (!ent.empty() && ent[0] == '#') {
      bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
      std::uint32_t cp = 0;
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) {
        throw XmlParseError(start, "malformed character reference");
      }
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') {
          d = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          d = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          d = c - 'A' + 10;
        } else {
          throw XmlParseError(start, "malformed character reference");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) {
          throw XmlParseError(start, "character reference out of range");
        }
      }
      append_utf8(out, cp);
    } else {
      throw XmlParseError(start, "unknown entity '&" + std::string(ent) + ";'");
    }
    return out;
  }

  void parse_element(std::optional<std::int64_t> parent) {
    if (eof() || peek() != '<') {
      throw XmlParseError(pos_, "expected an element");
    }
    std::size_t tag_at = pos_;
    ++pos_;
    std::string name = parse_name();
    bool self_closing = parse_tag_rest(name);

    const std::int64_t id = static_cast<std::int64_t>(rows_.size()) + 1;
    rows_.push_back(EdgeRow{id, parent, name, std::nullopt});
    children_.emplace_back();
    const std::size_t idx = rows_.size() - 1;
    if (parent) {
      children_[static_cast<std::size_t>(*parent - 1)].push_back(
          static_cast<std::int32_t>(idx));
    }
    if (self_closing) {
      return;
    }

    std::string text;
    std::size_t text_at = 0;
    bool has_child = false;
    for (;;) {
      if (eof()) {
        throw XmlParseError(tag_at, "unterminated element <" + name + ">");
      }
      if (starts_with("</")) {
        pos_ += 2;
        std::size_t close_at = pos_;
        std::string close = parse_name();
        if (close != name) {
          throw XmlParseError(close_at, "mismatched close tag </" + close +
                                            "> for <" + name + ">");
        }
        while (!eof() && is_ws(peek())) {
          ++pos_;
        }
        if (eof() || peek() != '>') {
          throw XmlParseError(pos_, "malformed close tag");
        }
        ++pos_;
        break;
      }
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      if (starts_with("<?")) {
        skip_pi();
        continue;
      }
      if (starts_with("<!")) {
        throw XmlParseError(pos_, "unsupported markup");
      }
      if (peek() == '<') {
        has_child = true;
        parse_element(id);
        continue;
      }
      if (text.empty()) {
        text_at = pos_;
      }
      while (!eof() && peek() != '<') {
        if (peek() == '&') {
          text += decode_entity();
        } else {
          text += peek();
          ++pos_;
        }
      }
    }

    std::string trimmed = trim(text);
    if (!trimmed.empty()) {
      if (has_child) {
        throw XmlParseError(text_at,
                            "mixed content in <" + name +
                                "> is not supported (text and child elements)");
      }
      rows_[idx].content = std::move(trimmed);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string>* warnings_;
  std::vector<EdgeRow> rows_;
  std::vector<std::vector<std::int32_t>> children_;
};

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out += c;
    }
  }
  out += "\"";
  return out;
}

}  // namespace

XmlDocument XmlDocument::parse(std::string_view xml,
                               std::vector<std::string>* warnings) {
  Parser parser(xml, warnings);
  Parser::Result parsed = parser.run();

  XmlDocument doc;
  doc.rows_ = std::move(parsed.rows);
  doc.children_ = std::move(parsed.children);

  // Serialized byte lengths, bottom-up. Children precede nothing in
  // document order, so a reverse pass sees every child before its parent.
  doc.sizes_.assign(doc.rows_.size(), 0);
  for (std::size_t i = doc.rows_.size(); i-- > 0;) {
    const EdgeRow& row = doc.rows_[i];
    std::int64_t len = 2 * static_cast<std::int64_t>(row.name.size()) + 5;
    if (row.content) {
      len += static_cast<std::int64_t>(escape_text(*row.content).size());
    } else if (!doc.children_[i].empty()) {
      len += 1;  // newline after the open tag
      for (std::int32_t c : doc.children_[i]) {
        len += doc.sizes_[static_cast<std::size_t>(c)] + 1;
      }
    }
    doc.sizes_[i] = len;
  }
  return doc;
}

bool XmlDocument::contains(std::int64_t id) const {
  return id >= 1 && static_cast<std::size_t>(id) <= rows_.size();
}

std::size_t XmlDocument::index_of(std::int64_t id) const {
  if (!contains(id)) {
    throw InvalidInput("unknown element id " + std::to_string(id));
  }
  return static_cast<std::size_t>(id - 1);
}

void XmlDocument::append_serialized(std::size_t idx, std::string& out) const {
  const EdgeRow& row = rows_[idx];
  out += '<';
  out += row.name;
  out += '>';
  if (row.content) {
    out += escape_text(*row.content);
  } else if (!children_[idx].empty()) {
    out += '\n';
    for (std::int32_t c : children_[idx]) {
      append_serialized(static_cast<std::size_t>(c), out);
      out += '\n';
    }
  }
  out += "</";
  out += row.name;
  out += '>';
}

std::string XmlDocument::serialize(std::int64_t id) const {
  std::string out;
  append_serialized(index_of(id), out);
  return out;
}

std::int64_t XmlDocument::size_of(std::int64_t id) const {
  return sizes_[index_of(id)];
}

std::string XmlDocument::edge_table_csv() const {
  std::string out = "ID,parentID,name,content\n";
  for (const EdgeRow& row : rows_) {
    out += std::to_string(row.id);
    out += ',';
    if (row.parent_id) {
      out += std::to_string(*row.parent_id);
    }
    out += ',';
    out += csv_field(row.name);
    out += ',';
    if (row.content) {
      out += csv_field(*row.content);
    }
    out += '\n';
  }
  return out;
}

AdTree attach_workload(const XmlDocument& doc,
                       const std::vector<WorkloadEntry>& entries,
                       const CostModel& cm) {
  const std::vector<EdgeRow>& rows = doc.rows();

  std::vector<std::int64_t> freq(rows.size(), 0);
  std::vector<char> seen(rows.size(), 0);
  for (const WorkloadEntry& e : entries) {
    if (e.node_id < 1 || static_cast<std::size_t>(e.node_id) > rows.size()) {
      throw InvalidInput("workload entry references unknown element " +
                         std::to_string(e.node_id));
    }
    if (e.freq < 0) {
      throw InvalidInput("workload entry for element " +
                         std::to_string(e.node_id) + " has negative frequency");
    }
    std::size_t i = static_cast<std::size_t>(e.node_id - 1);
    if (seen[i]) {
      throw InvalidInput("duplicate workload entry for element " +
                         std::to_string(e.node_id));
    }
    seen[i] = 1;
    freq[i] = e.freq;
  }

  // Subtree element counts: reverse document order sees children first.
  std::vector<std::int64_t> subtree(rows.size(), 1);
  for (std::size_t i = rows.size(); i-- > 0;) {
    if (rows[i].parent_id) {
      subtree[static_cast<std::size_t>(*rows[i].parent_id - 1)] += subtree[i];
    }
  }

  std::vector<AdNode> nodes;
  nodes.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    AdNode n;
    n.id = rows[i].id;
    if (rows[i].parent_id) {
      n.parent = *rows[i].parent_id;
    }
    n.name = rows[i].name;
    n.size = doc.sizes()[i];
    n.freq = freq[i];
    switch (cm.mode) {
      case CostModel::Mode::subtree_count:
        n.cost_r = subtree[i];
        n.cost_a = 1;
        break;
      case CostModel::Mode::constant:
        n.cost_r = cm.constant_r;
        n.cost_a = cm.constant_a;
        break;
      case CostModel::Mode::explicit_costs: {
        auto it = cm.per_node.find(n.id);
        if (it == cm.per_node.end()) {
          throw InvalidInput("explicit cost model misses element " +
                             std::to_string(n.id));
        }
        n.cost_r = it->second.first;
        n.cost_a = it->second.second;
        break;
      }
    }
    if (n.cost_a > n.cost_r) {
      throw InvalidInput("invalid cost model: cost_a > cost_r on element " +
                         std::to_string(n.id));
    }
    n.selectable = true;
    nodes.push_back(std::move(n));
  }
  return AdTree::build(std::move(nodes));
}

}  // namespace viewsel
