#include "viewsel/genbench.hpp"

#include <chrono>
#include <json.hpp>
#include <random>
#include <sstream>

namespace viewsel {

namespace {

// Bounded draw via modulo on the raw engine output: uniform enough for test
// instances and identical on every platform, unlike the standard
// distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (lo >= hi) {
      return lo;
    }
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace

GenSpec::Family GenSpec::parse_family(const std::string& text) {
  if (text == "random") {
    return Family::random;
  }
  if (text == "path") {
    return Family::path;
  }
  if (text == "star") {
    return Family::star;
  }
  if (text == "balanced-binary") {
    return Family::balanced_binary;
  }
  if (text == "knapsack-reduction") {
    return Family::knapsack_reduction;
  }
  throw InvalidInput("unknown family '" + text +
                     "' (expected random, path, star, balanced-binary or "
                     "knapsack-reduction)");
}

Instance generate(const GenSpec& spec) {
  if (spec.n < 1) {
    throw InvalidInput("generate: n must be >= 1");
  }
  if (spec.freq_max < 0 || spec.cost_max < 0 || spec.size_max < 1) {
    throw InvalidInput("generate: value ranges must be nonnegative (size_max >= 1)");
  }
  if (spec.budget_percent < 0) {
    throw InvalidInput("generate: budget percent must be nonnegative");
  }
  Rng rng(spec.seed);

  if (spec.family == GenSpec::Family::knapsack_reduction) {
    KnapsackInstance k;
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < spec.n; ++i) {
      std::int64_t profit = rng.between(0, spec.cost_max);
      std::int64_t size = rng.between(1, spec.size_max);
      total += size;
      k.items.push_back(KnapsackInstance::Item{profit, size});
    }
    k.capacity = spec.budget ? *spec.budget
                             : total * spec.budget_percent / 100;
    return knapsack_to_tree(k);
  }

  std::vector<AdNode> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.n));
  std::int64_t total_size = 0;
  for (std::int64_t i = 1; i <= spec.n; ++i) {
    AdNode n;
    n.id = i;
    if (i > 1) {
      switch (spec.family) {
        case GenSpec::Family::path:
          n.parent = i - 1;
          break;
        case GenSpec::Family::star:
          n.parent = 1;
          break;
        case GenSpec::Family::balanced_binary:
          n.parent = i / 2;
          break;
        default:
          n.parent = rng.between(1, i - 1);
          break;
      }
    }
    n.name = "n" + std::to_string(i);
    n.size = rng.between(1, spec.size_max);
    n.freq = rng.between(0, spec.freq_max);
    n.cost_r = rng.between(0, spec.cost_max);
    n.cost_a = rng.between(0, n.cost_r);
    n.selectable = true;
    total_size += n.size;
    nodes.push_back(std::move(n));
  }
  std::int64_t budget = spec.budget ? *spec.budget
                                    : total_size * spec.budget_percent / 100;
  return Instance(AdTree::build(std::move(nodes)), budget);
}

Instance knapsack_to_tree(const KnapsackInstance& k) {
  if (k.items.empty()) {
    throw InvalidInput("knapsack_to_tree: empty item list");
  }
  if (k.capacity < 0) {
    throw InvalidInput("knapsack_to_tree: negative capacity");
  }
  for (std::size_t i = 0; i < k.items.size(); ++i) {
    if (k.items[i].profit < 0) {
      throw InvalidInput("knapsack_to_tree: negative profit on item " +
                         std::to_string(i));
    }
    if (k.items[i].size <= 0) {
      throw InvalidInput("knapsack_to_tree: item " + std::to_string(i) +
                         " has size " + std::to_string(k.items[i].size) +
                         "; items must have positive size");
    }
  }

  // Balanced split: leaves appear left to right in item order; ids in
  // preorder. Internal sentinels can never be selected (unselectable, and
  // their size exceeds the budget anyway).
  std::vector<AdNode> nodes;
  nodes.reserve(2 * k.items.size() - 1);
  NodeId next_id = 1;

  struct Range {
    std::size_t lo;
    std::size_t hi;  // half-open
    std::optional<NodeId> parent;
  };
  // Recursive preorder via explicit lambda.
  auto build = [&](auto&& self, std::size_t lo, std::size_t hi,
                   std::optional<NodeId> parent) -> void {
    NodeId id = next_id++;
    AdNode n;
    n.id = id;
    n.parent = parent;
    if (hi - lo == 1) {
      n.name = "item" + std::to_string(lo + 1);
      n.size = k.items[lo].size;
      n.freq = 1;
      n.cost_r = k.items[lo].profit;
      n.cost_a = 0;
      n.selectable = true;
      nodes.push_back(std::move(n));
      return;
    }
    n.name = "join";
    n.size = k.capacity + 1;
    n.freq = 0;
    n.cost_r = 0;
    n.cost_a = 0;
    n.selectable = false;
    nodes.push_back(std::move(n));
    std::size_t mid = lo + (hi - lo + 1) / 2;
    self(self, lo, mid, id);
    self(self, mid, hi, id);
  };
  build(build, 0, k.items.size(), std::nullopt);

  return Instance(AdTree::build(std::move(nodes)), k.capacity);
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

CompareReport compare(const Instance& inst,
                      const std::vector<Rational>& epsilons, Exec exec) {
  CompareReport report;
  std::optional<std::int64_t> exact_lambda;

  int selectable = 0;
  for (const AdNode& n : inst.tree.nodes()) {
    selectable += n.selectable ? 1 : 0;
  }

  if (selectable <= kBruteForceCap) {
    auto t0 = std::chrono::steady_clock::now();
    Solution s = brute_force(inst);
    CompareRow row;
    row.solver = "brute";
    row.lambda = s.lambda;
    row.mu = s.mu;
    row.runtime_ms = elapsed_ms(t0);
    row.ratio = 1.0;
    report.rows.push_back(std::move(row));
    exact_lambda = s.lambda;
  }

  std::int64_t cells =
      (static_cast<std::int64_t>(inst.tree.node_count()) + 1) *
      (inst.budget + 1);
  if (cells <= kDpCellCap) {
    auto t0 = std::chrono::steady_clock::now();
    Solution s = dp_exact(inst, exec);
    CompareRow row;
    row.solver = "dp";
    row.lambda = s.lambda;
    row.mu = s.mu;
    row.runtime_ms = elapsed_ms(t0);
    if (!exact_lambda) {
      exact_lambda = s.lambda;
    }
    row.ratio = s.lambda == 0 && *exact_lambda == 0
                    ? 1.0
                    : static_cast<double>(*exact_lambda) /
                          static_cast<double>(s.lambda);
    report.rows.push_back(std::move(row));
  }

  for (const Rational& eps : epsilons) {
    SketchStats stats;
    FptasOptions opts;
    opts.exec = exec;
    opts.stats = &stats;
    auto t0 = std::chrono::steady_clock::now();
    Solution s = approximate(inst, eps, opts);
    CompareRow row;
    row.solver = "fptas";
    row.epsilon = eps;
    row.lambda = s.lambda;
    row.mu = s.mu;
    row.runtime_ms = elapsed_ms(t0);
    if (exact_lambda) {
      row.ratio = (*exact_lambda == 0 && s.lambda == 0)
                      ? 1.0
                      : static_cast<double>(*exact_lambda) /
                            static_cast<double>(s.lambda);
    }
    row.max_list_len = stats.max_list_len;
    row.region_count = stats.region_count;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string CompareReport::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const CompareRow& row : rows) {
    nlohmann::ordered_json rj;
    rj["solver"] = row.solver;
    if (row.epsilon) {
      rj["epsilon"] = row.epsilon->to_double();
    } else {
      rj["epsilon"] = nullptr;
    }
    rj["lambda"] = row.lambda;
    rj["mu"] = row.mu;
    rj["runtime_ms"] = row.runtime_ms;
    if (row.ratio) {
      rj["ratio"] = *row.ratio;
    } else {
      rj["ratio"] = nullptr;
    }
    if (row.max_list_len) {
      rj["max_list_len"] = *row.max_list_len;
    } else {
      rj["max_list_len"] = nullptr;
    }
    if (row.region_count) {
      rj["region_count"] = *row.region_count;
    } else {
      rj["region_count"] = nullptr;
    }
    j.push_back(std::move(rj));
  }
  return j.dump() + "\n";
}

std::string CompareReport::to_text() const {
  std::ostringstream out;
  out << "solver        lambda        mu   runtime_ms     ratio  max_list\n";
  for (const CompareRow& row : rows) {
    std::string name = row.solver;
    if (row.epsilon) {
      name += "(" + row.epsilon->str() + ")";
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %7lld %9lld %12.3f %9s %9s\n",
                  name.c_str(), static_cast<long long>(row.lambda),
                  static_cast<long long>(row.mu), row.runtime_ms,
                  row.ratio ? std::to_string(*row.ratio).substr(0, 7).c_str()
                            : "-",
                  row.max_list_len ? std::to_string(*row.max_list_len).c_str()
                                   : "-");
    out << line;
  }
  return out.str();
}

}  // namespace viewsel
