#include "viewsel/fptas.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <span>
#include <unordered_set>

#include "viewsel/normalize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace viewsel {

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) {
    throw InvalidInput("rational must be nonnegative with positive denominator");
  }
  std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

Rational Rational::from_decimal(const std::string& text) {
  std::size_t dot = text.find('.');
  std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) {
    throw InvalidInput("not a decimal number: '" + text + "'");
  }
  if (whole.size() + frac.size() > 17) {
    throw InvalidInput("decimal has too many digits: '" + text + "'");
  }
  for (char c : whole) {
    if (c < '0' || c > '9') {
      throw InvalidInput("not a decimal number: '" + text + "'");
    }
  }
  for (char c : frac) {
    if (c < '0' || c > '9') {
      throw InvalidInput("not a decimal number: '" + text + "'");
    }
  }
  std::int64_t num = 0;
  for (char c : whole) {
    num = num * 10 + (c - '0');
  }
  std::int64_t den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Rational::of(num, den);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num)
                  : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

// ceil(2 * log2(x)) for x >= 1, exactly: the smallest m with 2^m >= x^2.
std::int64_t ceil_two_log2(const BigInt& x) {
  if (x <= 1) {
    return 0;
  }
  BigInt sq = x * x;
  auto m = static_cast<std::int64_t>(boost::multiprecision::msb(sq));
  return (BigInt(1) << static_cast<unsigned>(m)) == sq ? m : m + 1;
}

}  // namespace

FptasParams make_params(const AdTree& tree, Rational epsilon) {
  if (epsilon.num <= 0 || epsilon.num > epsilon.den) {
    throw InvalidInput("epsilon must be in (0, 1]");
  }
  if (!is_normalized(tree)) {
    throw InvalidInput("make_params requires a normalized tree");
  }

  FptasParams p;
  p.epsilon_ = epsilon;
  p.z_ = std::max<std::int64_t>(1, ceil_two_log2(chi(tree, ChiMode::padded)));
  p.f_ = Rational::of(p.z_ * epsilon.den + epsilon.num, p.z_ * epsilon.den);
  p.w_ = base_cost_w(tree);

  if (p.w_ > 1) {
    // Boundary b_k = f^(k-1) kept as an exact unreduced fraction; stop at
    // the first power reaching w. region_start_[k-1] is the first integer
    // strictly above b_k.
    BigInt num = 1;
    BigInt den = 1;
    const BigInt w = p.w_;
    std::int64_t k = 1;
    while (num < w * den) {
      p.region_start_.push_back(static_cast<std::int64_t>(num / den) + 1);
      ++k;
      num *= p.f_.num;
      den *= p.f_.den;
    }
    p.region_count_ = k;
  }
  return p;
}

std::int64_t FptasParams::region_of(std::int64_t value) const {
  if (value < 0 || value > w_) {
    throw InvalidInput("region_of: value " + std::to_string(value) +
                       " outside [0, " + std::to_string(w_) + "]");
  }
  if (value <= 1) {
    return 1;
  }
  auto it = std::upper_bound(region_start_.begin(), region_start_.end(), value);
  return 1 + (it - region_start_.begin());
}

std::pair<BigInt, BigInt> FptasParams::boundary(std::int64_t k) const {
  if (k < 1) {
    throw InvalidInput("boundary index must be >= 1");
  }
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 1; i < k; ++i) {
    num *= f_.num;
    den *= f_.den;
  }
  return {num, den};
}

namespace {

const std::vector<NodeId> kNoIds;

// A candidate survivor: the link of up to two existing solutions.
struct Cand {
  std::int64_t lambda = -1;  // -1 marks an empty slot
  std::int64_t mu = 0;
  std::int64_t members = 0;
  const Solution* a = nullptr;
  const Solution* b = nullptr;

  bool occupied() const { return lambda >= 0; }
};

const std::vector<NodeId>& ids_of(const Solution* s) {
  return s ? s->selection.ids() : kNoIds;
}

// Merged view over the two (disjoint, sorted) id vectors of a link.
struct IdStream {
  const std::vector<NodeId>& u;
  const std::vector<NodeId>& v;
  std::size_t i = 0;
  std::size_t j = 0;

  explicit IdStream(const Cand& c) : u(ids_of(c.a)), v(ids_of(c.b)) {}
  bool done() const { return i == u.size() && j == v.size(); }
  NodeId next() {
    if (i == u.size()) {
      return v[j++];
    }
    if (j == v.size()) {
      return u[i++];
    }
    return u[i] < v[j] ? u[i++] : v[j++];
  }
};

int lex_compare(const Cand& x, const Cand& y) {
  IdStream sx(x);
  IdStream sy(y);
  while (!sx.done() && !sy.done()) {
    NodeId a = sx.next();
    NodeId b = sy.next();
    if (a != b) {
      return a < b ? -1 : 1;
    }
  }
  if (sx.done() && sy.done()) {
    return 0;
  }
  return sx.done() ? -1 : 1;
}

// Survivor order within a region: smallest size, fewest members, then
// id-lexicographic. Total over distinct selections, so the pruned result
// does not depend on arrival order.
bool better(const Cand& x, const Cand& y) {
  if (x.mu != y.mu) {
    return x.mu < y.mu;
  }
  if (x.members != y.members) {
    return x.members < y.members;
  }
  return lex_compare(x, y) < 0;
}

// Per-region minima. Slot 0 holds profit-0 candidates, slot k >= 1 the
// candidates whose profit falls in region k (slot 1 is exactly profit 1).
class Buckets {
public:
  explicit Buckets(const FptasParams& params)
      : params_(params),
        slots_(static_cast<std::size_t>(params.region_count()) + 1) {}

  void offer(const Cand& c) {
    std::size_t s = c.lambda == 0
                        ? 0
                        : static_cast<std::size_t>(params_.region_of(c.lambda));
    Cand& slot = slots_[s];
    if (!slot.occupied() || better(c, slot)) {
      slot = c;
    }
  }

  void fold(const Buckets& other) {
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      const Cand& c = other.slots_[s];
      if (!c.occupied()) {
        continue;
      }
      Cand& slot = slots_[s];
      if (!slot.occupied() || better(c, slot)) {
        slot = c;
      }
    }
  }

  // Materializes the survivors in canonical order (ascending lambda).
  // Region 1 contributes its overall minimum plus, when that minimum has
  // profit 0, the best profit-1 candidate; other regions one survivor.
  SolutionList emit() const {
    SolutionList out;
    const Cand& zero = slots_[0];
    const Cand& unit = slots_[1];  // region 1 holds integer profits 0 and 1
    if (zero.occupied() && (!unit.occupied() || better(zero, unit))) {
      out.solutions.push_back(materialize(zero));
    }
    for (std::size_t s = 1; s < slots_.size(); ++s) {
      if (slots_[s].occupied()) {
        out.solutions.push_back(materialize(slots_[s]));
      }
    }
    return out;
  }

private:
  static Solution materialize(const Cand& c) {
    const auto& u = ids_of(c.a);
    const auto& v = ids_of(c.b);
    std::vector<NodeId> ids;
    ids.reserve(u.size() + v.size());
    std::merge(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(ids));
    return Solution{Selection::of(std::move(ids)), c.lambda, c.mu};
  }

  const FptasParams& params_;
  std::vector<Cand> slots_;
};

Cand link(const Solution& a, const Solution& b) {
  return Cand{a.lambda + b.lambda, a.mu + b.mu,
              static_cast<std::int64_t>(a.selection.size() + b.selection.size()),
              &a, &b};
}

Cand single(const Solution& s) {
  return Cand{s.lambda, s.mu, static_cast<std::int64_t>(s.selection.size()), &s,
              nullptr};
}

// Fused prune(merge(a, b)): cross-links the two lists, drops over-budget
// links, and keeps only the per-region minima. This is the hot inner loop;
// the parallel flavor folds thread-local bucket sets, which yields exactly
// the serial result because the survivor order is total.
SolutionList merge_prune(const SolutionList& a, const SolutionList& b,
                         const Instance& inst, const FptasParams& params,
                         Exec exec) {
  const std::int64_t budget = inst.budget;
  Buckets buckets(params);
#ifdef _OPENMP
  const std::size_t pairs = a.solutions.size() * b.solutions.size();
  if (exec == Exec::parallel && pairs >= 4096) {
#pragma omp parallel
    {
      Buckets local(params);
#pragma omp for schedule(static) nowait
      for (std::size_t i = 0; i < a.solutions.size(); ++i) {
        const Solution& sa = a.solutions[i];
        for (const Solution& sb : b.solutions) {
          if (sa.mu + sb.mu <= budget) {
            local.offer(link(sa, sb));
          }
        }
      }
#pragma omp critical(viewsel_fptas_fold)
      buckets.fold(local);
    }
    return buckets.emit();
  }
#endif
  (void)exec;
  for (const Solution& sa : a.solutions) {
    for (const Solution& sb : b.solutions) {
      if (sa.mu + sb.mu <= budget) {
        buckets.offer(link(sa, sb));
      }
    }
  }
  return buckets.emit();
}

void check_disjoint(const std::vector<const SolutionList*>& lists) {
  std::unordered_set<NodeId> seen;
  for (const SolutionList* l : lists) {
    std::unordered_set<NodeId> mine;
    for (const Solution& s : l->solutions) {
      for (NodeId id : s.selection.ids()) {
        mine.insert(id);
      }
    }
    for (NodeId id : mine) {
      if (!seen.insert(id).second) {
        throw InvalidInput("merge: lists share node " + std::to_string(id) +
                           "; inputs must come from disjoint subtrees");
      }
    }
  }
}

struct SketchContext {
  const Instance& inst;
  const FptasParams& params;
  std::vector<SubtreeAggregate> aggs;
  FptasOptions opts;

  void record(const SolutionList& l) const {
    if (opts.stats) {
      opts.stats->max_list_len = std::max(
          opts.stats->max_list_len, static_cast<std::int64_t>(l.solutions.size()));
    }
    if (opts.validate_lists) {
      validate(l);
    }
  }

  void validate(const SolutionList& l) const {
    for (const Solution& s : l.solutions) {
      if (s.mu > inst.budget || !is_antichain(inst.tree, s.selection) ||
          s.lambda != profit_lambda(inst.tree, s.selection) ||
          s.mu != mat_size(inst.tree, s.selection)) {
        throw std::logic_error("sketch produced an invalid list entry");
      }
    }
  }
};

SolutionList union_rec(std::span<const SolutionList> lists,
                       const SketchContext& ctx) {
  if (lists.size() == 1) {
    return lists[0];
  }
  const std::size_t half = lists.size() / 2;
  SolutionList left = union_rec(lists.first(half), ctx);
  SolutionList right = union_rec(lists.subspan(half), ctx);
  SolutionList out = merge_prune(left, right, ctx.inst, ctx.params, ctx.opts.exec);
  ctx.record(out);
  return out;
}

SolutionList sketch_rec(std::size_t v, const SketchContext& ctx) {
  const AdTree& tree = ctx.inst.tree;
  const AdNode& node = tree.node_at(v);
  const bool fits = node.selectable && node.size <= ctx.inst.budget;

  const auto& kids = tree.children_at(v);
  if (kids.empty()) {
    SolutionList l;
    l.solutions.push_back(Solution{});  // the empty selection
    if (fits) {
      l.solutions.push_back(Solution{Selection::of({node.id}),
                                     ctx.aggs[v].profit, node.size});
    }
    std::sort(l.solutions.begin(), l.solutions.end(), [](auto& x, auto& y) {
      return std::tie(x.lambda, x.mu) < std::tie(y.lambda, y.mu);
    });
    ctx.record(l);
    return l;
  }

  std::vector<SolutionList> child_lists;
  child_lists.reserve(kids.size());
  for (std::int32_t c : kids) {
    child_lists.push_back(sketch_rec(static_cast<std::size_t>(c), ctx));
  }
  SolutionList combined = union_rec(child_lists, ctx);

  // The select-this-node solution joins after the children's union (linking
  // it against child solutions would overlap), then one prune.
  Buckets buckets(ctx.params);
  for (const Solution& s : combined.solutions) {
    buckets.offer(single(s));
  }
  Solution self{Selection::of({node.id}), ctx.aggs[v].profit, node.size};
  if (fits) {
    buckets.offer(single(self));
  }
  SolutionList out = buckets.emit();
  ctx.record(out);
  return out;
}

}  // namespace

SolutionList prune(const SolutionList& list, const FptasParams& params) {
  Buckets buckets(params);
  for (const Solution& s : list.solutions) {
    buckets.offer(single(s));
  }
  return buckets.emit();
}

SolutionList merge(const SolutionList& a, const SolutionList& b,
                   const Instance& inst) {
  check_disjoint({&a, &b});
  SolutionList out;
  for (const Solution& sa : a.solutions) {
    for (const Solution& sb : b.solutions) {
      if (sa.mu + sb.mu > inst.budget) {
        continue;
      }
      std::vector<NodeId> ids;
      const auto& u = sa.selection.ids();
      const auto& v = sb.selection.ids();
      std::merge(u.begin(), u.end(), v.begin(), v.end(),
                 std::back_inserter(ids));
      out.solutions.push_back(Solution{Selection::of(std::move(ids)),
                                       sa.lambda + sb.lambda, sa.mu + sb.mu});
    }
  }
  std::sort(out.solutions.begin(), out.solutions.end(), [](auto& x, auto& y) {
    return std::tie(x.lambda, x.mu, x.selection.ids()) <
           std::tie(y.lambda, y.mu, y.selection.ids());
  });
  return out;
}

SolutionList union_lists(const std::vector<SolutionList>& lists,
                         const FptasParams& params, const Instance& inst) {
  if (lists.empty()) {
    throw InvalidInput("union_lists: no lists");
  }
  std::vector<const SolutionList*> ptrs;
  for (const SolutionList& l : lists) {
    ptrs.push_back(&l);
  }
  check_disjoint(ptrs);
  std::vector<SubtreeAggregate> aggs;  // unused by union_rec
  SketchContext ctx{inst, params, std::move(aggs), FptasOptions{}};
  return union_rec(std::span<const SolutionList>(lists), ctx);
}

SolutionList sketch(const Instance& inst, NodeId subtree_root,
                    const FptasParams& params, const FptasOptions& opts) {
  if (!is_normalized(inst.tree)) {
    throw InvalidInput("sketch requires a normalized tree");
  }
  SketchContext ctx{inst, params, subtree_aggregates(inst.tree), opts};
  if (opts.stats) {
    opts.stats->region_count = params.region_count();
    opts.stats->z = params.z();
    opts.stats->w = params.w();
  }
  return sketch_rec(inst.tree.index_of(subtree_root), ctx);
}

Solution approximate(const Instance& inst, Rational epsilon,
                     const FptasOptions& opts) {
  NormalizedTree norm = normalize(inst.tree);
  Instance norm_inst(std::move(norm.tree), inst.budget);
  FptasParams params = make_params(norm_inst.tree, epsilon);
  SolutionList final_list =
      sketch(norm_inst, norm_inst.tree.root_id(), params, opts);

  // Max lambda, then min mu, then lexicographically smallest ids. The list
  // is never empty: it always contains the empty selection.
  const Solution* best = &final_list.solutions.front();
  for (const Solution& s : final_list.solutions) {
    if (s.lambda > best->lambda ||
        (s.lambda == best->lambda &&
         (s.mu < best->mu ||
          (s.mu == best->mu && s.selection.ids() < best->selection.ids())))) {
      best = &s;
    }
  }

  // Dummies are unselectable, so the ids map back to the original tree as-is.
  assert(best->lambda == profit_lambda(inst.tree, best->selection));
  assert(best->mu == mat_size(inst.tree, best->selection));
  return *best;
}

}  // namespace viewsel
