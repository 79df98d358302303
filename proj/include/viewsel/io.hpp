#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "viewsel/exact.hpp"
#include "viewsel/ingest.hpp"
#include "viewsel/model.hpp"

namespace viewsel {

/// Instance file: {"budget": int, "nodes": [{"id", "parent", "name",
/// "size", "freq", "cost_r", "cost_a", "selectable"}, ...]}.
/// Loading validates all structural invariants; ancestor/descendant size
/// monotonicity violations are reported as warnings (synthetic instances
/// may violate it on purpose).
Instance instance_from_json(std::string_view text,
                            std::vector<std::string>* warnings = nullptr);
std::string instance_to_json(const Instance& inst);

Instance load_instance(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);
void save_instance(const Instance& inst, const std::filesystem::path& path);

/// Workload file: [{"node_id": int, "freq": int}, ...].
std::vector<WorkloadEntry> workload_from_json(std::string_view text);
std::vector<WorkloadEntry> load_workload(const std::filesystem::path& path);

/// Knapsack file: {"capacity": int, "items": [[profit, size], ...]}; a bare
/// item list is also accepted (capacity 0 until overridden).
KnapsackInstance knapsack_from_json(std::string_view text);
KnapsackInstance load_knapsack(const std::filesystem::path& path);
std::string knapsack_to_json(const KnapsackInstance& k);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace viewsel
