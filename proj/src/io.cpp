#include "viewsel/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace viewsel {

namespace {

using ordered_json = nlohmann::ordered_json;

std::int64_t require_int(const ordered_json& j, const char* key,
                         const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidInput(where + ": missing or non-integer field '" + key + "'");
  }
  return j[key].get<std::int64_t>();
}

}  // namespace

Instance instance_from_json(std::string_view text,
                            std::vector<std::string>* warnings) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InvalidInput("instance file is not a JSON object");
  }
  std::int64_t budget = require_int(j, "budget", "instance");
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw InvalidInput("instance: missing 'nodes' array");
  }

  std::vector<AdNode> nodes;
  nodes.reserve(j["nodes"].size());
  for (const auto& nj : j["nodes"]) {
    if (!nj.is_object()) {
      throw InvalidInput("instance: node entries must be objects");
    }
    AdNode n;
    n.id = require_int(nj, "id", "node");
    if (nj.contains("parent") && !nj["parent"].is_null()) {
      if (!nj["parent"].is_number_integer()) {
        throw InvalidInput("node " + std::to_string(n.id) +
                           ": 'parent' must be an integer or null");
      }
      n.parent = nj["parent"].get<std::int64_t>();
    }
    if (!nj.contains("name") || !nj["name"].is_string()) {
      throw InvalidInput("node " + std::to_string(n.id) + ": missing 'name'");
    }
    n.name = nj["name"].get<std::string>();
    n.size = require_int(nj, "size", "node " + std::to_string(n.id));
    n.freq = require_int(nj, "freq", "node " + std::to_string(n.id));
    n.cost_r = require_int(nj, "cost_r", "node " + std::to_string(n.id));
    n.cost_a = require_int(nj, "cost_a", "node " + std::to_string(n.id));
    if (nj.contains("selectable")) {
      if (!nj["selectable"].is_boolean()) {
        throw InvalidInput("node " + std::to_string(n.id) +
                           ": 'selectable' must be a boolean");
      }
      n.selectable = nj["selectable"].get<bool>();
    }
    nodes.push_back(std::move(n));
  }

  Instance inst(AdTree::build(std::move(nodes)), budget);
  if (warnings) {
    for (std::string& v : size_monotonicity_violations(inst.tree)) {
      warnings->push_back(std::move(v));
    }
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["budget"] = inst.budget;
  j["nodes"] = ordered_json::array();
  for (const AdNode& n : inst.tree.nodes()) {
    ordered_json nj;
    nj["id"] = n.id;
    if (n.parent) {
      nj["parent"] = *n.parent;
    } else {
      nj["parent"] = nullptr;
    }
    nj["name"] = n.name;
    nj["size"] = n.size;
    nj["freq"] = n.freq;
    nj["cost_r"] = n.cost_r;
    nj["cost_a"] = n.cost_a;
    nj["selectable"] = n.selectable;
    j["nodes"].push_back(std::move(nj));
  }
  return j.dump(2) + "\n";
}

Instance load_instance(const std::filesystem::path& path,
                       std::vector<std::string>* warnings) {
  try {
    return instance_from_json(read_file(path), warnings);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_file(path, instance_to_json(inst));
}

std::vector<WorkloadEntry> workload_from_json(std::string_view text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    throw InvalidInput("workload file is not a JSON array");
  }
  std::vector<WorkloadEntry> entries;
  entries.reserve(j.size());
  for (const auto& ej : j) {
    if (!ej.is_object()) {
      throw InvalidInput("workload entries must be objects");
    }
    WorkloadEntry e;
    e.node_id = require_int(ej, "node_id", "workload entry");
    e.freq = require_int(ej, "freq", "workload entry");
    entries.push_back(e);
  }
  return entries;
}

std::vector<WorkloadEntry> load_workload(const std::filesystem::path& path) {
  try {
    return workload_from_json(read_file(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

KnapsackInstance knapsack_from_json(std::string_view text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw InvalidInput("knapsack file is not valid JSON");
  }
  KnapsackInstance k;
  const ordered_json* items = nullptr;
  if (j.is_object()) {
    k.capacity = require_int(j, "capacity", "knapsack");
    if (!j.contains("items") || !j["items"].is_array()) {
      throw InvalidInput("knapsack: missing 'items' array");
    }
    items = &j["items"];
    if (j.contains("goal")) {
      k.goal = require_int(j, "goal", "knapsack");
    }
  } else if (j.is_array()) {
    items = &j;
  } else {
    throw InvalidInput("knapsack file must be an object or an item array");
  }
  for (const auto& ij : *items) {
    if (!ij.is_array() || ij.size() != 2 || !ij[0].is_number_integer() ||
        !ij[1].is_number_integer()) {
      throw InvalidInput("knapsack items must be [profit, size] pairs");
    }
    k.items.push_back(KnapsackInstance::Item{ij[0].get<std::int64_t>(),
                                             ij[1].get<std::int64_t>()});
  }
  return k;
}

KnapsackInstance load_knapsack(const std::filesystem::path& path) {
  try {
    return knapsack_from_json(read_file(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::string knapsack_to_json(const KnapsackInstance& k) {
  ordered_json j;
  j["capacity"] = k.capacity;
  j["items"] = ordered_json::array();
  for (const auto& item : k.items) {
    j["items"].push_back({item.profit, item.size});
  }
  if (k.goal) {
    j["goal"] = *k.goal;
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInput("cannot write file: " + path.string());
  }
  out << content;
  if (!out) {
    throw InvalidInput("failed writing file: " + path.string());
  }
}

}  // namespace viewsel
