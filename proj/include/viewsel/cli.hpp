#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace viewsel::cli {

/// Runs one subcommand (ingest, gen, solve, eval, reduce-knapsack, compare)
/// against the given streams. Returns the process exit code: 0 on success,
/// 2 on invalid input, 3 on resource limits. Result documents go to `out`;
/// diagnostics and warnings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace viewsel::cli
