#pragma once

#include <string>
#include <utility>
#include <vector>

#include "viewsel/metrics.hpp"
#include "viewsel/model.hpp"

namespace viewsel {

/// Exact nonnegative rational, reduced, positive denominator. The whole
/// scheme is float-free: epsilon, f, and the region boundaries are exact.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  /// Parses a plain decimal string such as "0.25", "1" or ".5".
  static Rational from_decimal(const std::string& text);

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

/// Geometric profit-region layout: f = 1 + eps/z with
/// z = max(1, ceil(2*log2(chi_padded))); regions I_1 = [0,1] and
/// I_k = (b_{k-1}, b_k] with b_k = f*b_{k-1}, covering [0, w].
///
/// Profits are integers, so each boundary is represented by the first
/// integer strictly above it; region lookup is then a pure integer binary
/// search, computed once from exact rational arithmetic.
class FptasParams {
public:
  Rational epsilon() const { return epsilon_; }
  std::int64_t z() const { return z_; }
  Rational f() const { return f_; }
  std::int64_t w() const { return w_; }
  /// Number of regions t1.
  std::int64_t region_count() const { return region_count_; }

  /// Region index in [1, t1] of an integer profit; throws InvalidInput
  /// outside [0, w].
  std::int64_t region_of(std::int64_t value) const;

  /// Exact boundary b_k = f^(k-1) as an unreduced fraction, k >= 1.
  std::pair<BigInt, BigInt> boundary(std::int64_t k) const;

private:
  friend FptasParams make_params(const AdTree& tree, Rational epsilon);

  Rational epsilon_;
  std::int64_t z_ = 1;
  Rational f_;
  std::int64_t w_ = 0;
  std::int64_t region_count_ = 1;
  // first integer strictly above b_k, for k = 1..t1-1; ascending, may
  // contain duplicates (regions narrower than one integer).
  std::vector<std::int64_t> region_start_;
};

/// Derives the region layout from a normalized tree. Throws InvalidInput if
/// the tree is not normalized or epsilon is outside (0, 1].
FptasParams make_params(const AdTree& tree, Rational epsilon);

/// A list of partial solutions. After pruning it holds at most one solution
/// per region (two for the bottom region, see prune). Canonical order:
/// ascending (lambda, mu, ids).
struct SolutionList {
  std::vector<Solution> solutions;
  bool operator==(const SolutionList&) const = default;
};

/// Counters filled by approximate()/sketch() when requested.
struct SketchStats {
  std::int64_t max_list_len = 0;  ///< max length over every list returned
  std::int64_t region_count = 0;  ///< t1 of the run
  std::int64_t z = 0;
  std::int64_t w = 0;
};

struct FptasOptions {
  Exec exec = Exec::serial;
  SketchStats* stats = nullptr;
  /// Re-validate every intermediate list (antichain, budget, cached values)
  /// against the tree. For tests; quadratic.
  bool validate_lists = false;
};

/// Keeps the minimum-size solution of each occupied region (ties: fewer
/// members, then id-lexicographic). The bottom region [0,1] additionally
/// keeps the minimum-size profit-1 solution when its overall minimum has
/// profit 0: collapsing an integer profit of 1 into a profit-0 survivor
/// would lose a whole unit and void the approximation guarantee, and the
/// extra survivor keeps the list within the t1+1 bound.
SolutionList prune(const SolutionList& list, const FptasParams& params);

/// All pairwise links of two lists drawn from node-disjoint subtrees,
/// dropping links over budget (linking only grows sizes, so no feasible
/// final solution is lost). Throws InvalidInput if the lists share nodes.
SolutionList merge(const SolutionList& a, const SolutionList& b,
                   const Instance& inst);

/// Recursive halving combine: prune(merge(union(first half),
/// union(second half))); a single list is returned unchanged.
SolutionList union_lists(const std::vector<SolutionList>& lists,
                         const FptasParams& params, const Instance& inst);

/// Solution lists for the subtree rooted at `subtree_root` (normalized
/// instance): leaves yield {self, empty}; internal nodes combine their
/// children's lists, append the select-this-node solution when it fits the
/// budget, and prune. The returned list always contains the empty solution.
SolutionList sketch(const Instance& inst, NodeId subtree_root,
                    const FptasParams& params, const FptasOptions& opts = {});

/// The approximation scheme: normalizes the tree, builds the region layout,
/// sketches from the root and returns the best feasible solution (max
/// lambda, then min mu, then lexicographic). Guarantees
/// (1 + epsilon) * lambda(returned) >= lambda(optimum) and mu <= budget.
Solution approximate(const Instance& inst, Rational epsilon,
                     const FptasOptions& opts = {});

}  // namespace viewsel
