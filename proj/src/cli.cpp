#include "viewsel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <optional>
#include <ostream>

#include "viewsel/exact.hpp"
#include "viewsel/fptas.hpp"
#include "viewsel/genbench.hpp"
#include "viewsel/io.hpp"
#include "viewsel/metrics.hpp"
#include "viewsel/model.hpp"

namespace viewsel::cli {

namespace {

#ifdef _OPENMP
constexpr Exec kDefaultExec = Exec::parallel;
#else
constexpr Exec kDefaultExec = Exec::serial;
#endif

void print_warnings(const std::vector<std::string>& warnings,
                    std::ostream& err) {
  for (const std::string& w : warnings) {
    err << "warning: " << w << "\n";
  }
}

// The result document shared by solve and eval.
std::string result_json(const Instance& inst, const Selection& sel,
                        std::int64_t lambda, std::int64_t mu) {
  nlohmann::ordered_json j;
  j["selection"] = sel.ids();
  j["lambda"] = lambda;
  j["mu"] = mu;
  j["tau"] = base_cost_w(inst.tree) - lambda;
  j["feasible"] = mu <= inst.budget;
  return j.dump() + "\n";
}

std::vector<std::int64_t> parse_id_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty()) {
      throw InvalidInput("empty entry in list '" + text + "'");
    }
    std::size_t used = 0;
    std::int64_t value;
    try {
      value = std::stoll(part, &used);
    } catch (const std::logic_error&) {
      throw InvalidInput("not an integer: '" + part + "'");
    }
    if (used != part.size()) {
      throw InvalidInput("not an integer: '" + part + "'");
    }
    out.push_back(value);
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<Rational> parse_epsilon_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(Rational::from_decimal(part));
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

Instance load_with_budget(const std::string& path,
                          const std::optional<std::int64_t>& budget,
                          std::ostream& err) {
  std::vector<std::string> warnings;
  Instance inst = load_instance(path, &warnings);
  print_warnings(warnings, err);
  if (budget) {
    return Instance(std::move(inst.tree), *budget);
  }
  return inst;
}

int run_checked(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Budgeted selection of XML subtrees to materialize"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand(
      "ingest", "Build an instance from an XML document and a workload");
  std::string xml_path;
  std::string workload_path;
  std::string cost_model_text = "subtree-count";
  std::string ingest_out;
  ingest->add_option("--xml", xml_path, "XML document")->required();
  ingest->add_option("--workload", workload_path, "workload JSON")->required();
  ingest->add_option("--cost-model", cost_model_text,
                     "subtree-count or constant:R,A");
  ingest->add_option("--out", ingest_out, "instance file to write")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  std::string family_text;
  std::int64_t gen_n = 1;
  std::uint64_t gen_seed = 0;
  std::optional<std::int64_t> gen_budget;
  std::string gen_out;
  gen->add_option("--family", family_text,
                  "random, path, star, balanced-binary, knapsack-reduction")
      ->required();
  gen->add_option("--n", gen_n, "number of nodes (items)")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--budget", gen_budget,
                  "explicit budget (default: 25% of total size)");
  gen->add_option("--out", gen_out, "instance file to write")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  std::string solve_instance;
  std::string solver;
  std::optional<std::string> epsilon_text;
  std::optional<std::int64_t> solve_budget;
  solve->add_option("--instance", solve_instance, "instance file")->required();
  solve->add_option("--solver", solver, "fptas, dp or brute")
      ->required()
      ->check(CLI::IsMember({"fptas", "dp", "brute"}));
  solve->add_option("--epsilon", epsilon_text, "accuracy (fptas only)");
  solve->add_option("--budget", solve_budget, "override the stored budget");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a selection");
  std::string eval_instance;
  std::string selection_text;
  eval->add_option("--instance", eval_instance, "instance file")->required();
  eval->add_option("--selection", selection_text, "comma-separated node ids")
      ->required();

  // reduce-knapsack
  auto* reduce = app.add_subcommand(
      "reduce-knapsack", "Map a knapsack input onto a tree instance");
  std::string items_path;
  std::int64_t capacity = 0;
  std::string reduce_out;
  reduce->add_option("--items", items_path, "knapsack JSON file")->required();
  reduce->add_option("--capacity", capacity, "knapsack capacity")->required();
  reduce->add_option("--out", reduce_out, "instance file to write")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare solvers on an instance");
  std::string cmp_instance;
  std::string epsilons_text;
  cmp->add_option("--instance", cmp_instance, "instance file")->required();
  cmp->add_option("--epsilons", epsilons_text, "comma-separated epsilons")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (ingest->parsed()) {
    std::vector<std::string> warnings;
    XmlDocument doc = XmlDocument::parse(read_file(xml_path), &warnings);
    print_warnings(warnings, err);
    std::vector<WorkloadEntry> workload = load_workload(workload_path);
    CostModel cm = CostModel::parse(cost_model_text);
    AdTree tree = attach_workload(doc, workload, cm);
    // Budget is chosen at solve time (solve --budget); stored as 0 here.
    save_instance(Instance(std::move(tree), 0), ingest_out);
    return 0;
  }

  if (gen->parsed()) {
    GenSpec spec;
    spec.family = GenSpec::parse_family(family_text);
    spec.n = gen_n;
    spec.seed = gen_seed;
    spec.budget = gen_budget;
    save_instance(generate(spec), gen_out);
    return 0;
  }

  if (solve->parsed()) {
    Instance inst = load_with_budget(solve_instance, solve_budget, err);
    Solution sol;
    if (solver == "fptas") {
      if (!epsilon_text) {
        err << "error: --solver fptas requires --epsilon\n";
        return 2;
      }
      Rational eps = Rational::from_decimal(*epsilon_text);
      FptasOptions opts;
      opts.exec = kDefaultExec;
      sol = approximate(inst, eps, opts);
    } else {
      if (epsilon_text) {
        err << "error: --epsilon only applies to --solver fptas\n";
        return 2;
      }
      sol = solver == "dp" ? dp_exact(inst, kDefaultExec) : brute_force(inst);
    }
    out << result_json(inst, sol.selection, sol.lambda, sol.mu);
    return 0;
  }

  if (eval->parsed()) {
    Instance inst = load_with_budget(eval_instance, std::nullopt, err);
    Selection sel = Selection::of(parse_id_list(selection_text));
    validate_selection(inst.tree, sel);
    std::int64_t lambda = profit_lambda(inst.tree, sel);
    std::int64_t mu = mat_size(inst.tree, sel);
    out << result_json(inst, sel, lambda, mu);
    return 0;
  }

  if (reduce->parsed()) {
    KnapsackInstance k = load_knapsack(items_path);
    k.capacity = capacity;
    save_instance(knapsack_to_tree(k), reduce_out);
    return 0;
  }

  if (cmp->parsed()) {
    Instance inst = load_with_budget(cmp_instance, std::nullopt, err);
    CompareReport report =
        compare(inst, parse_epsilon_list(epsilons_text), kDefaultExec);
    out << report.to_json();
    err << report.to_text();
    return 0;
  }

  err << "error: no subcommand\n";
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_checked(args, out, err);
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace viewsel::cli
