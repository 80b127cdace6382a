#pragma once

#include <atomic>

#include "vted/budget.hpp"
#include "vted/cost.hpp"
#include "vted/mapping.hpp"
#include "vted/ted_ordered.hpp"
#include "vted/tree.hpp"

namespace vted {

struct UnorderedOptions {
  /// Solutions with cost <= initial_upper are searched for; anything above
  /// is pruned. Defaults to unbounded.
  double initial_upper = std::numeric_limits<double>::infinity();
  /// Fallback witness attaining initial_upper (e.g. an ordered alignment);
  /// reported when the search is cut off before finding anything better.
  const EditMapping* initial_witness = nullptr;
  /// Shared expansion budget; when null a fresh one is made from `limits`.
  BudgetState* budget = nullptr;
  SearchLimits limits{};
  /// Monotone upper bound shared across sibling searches (substitution
  /// enumeration). Pruning against it stays strict so that equal-cost optima
  /// are still found and tie-breaking is deterministic.
  std::atomic<double>* shared_upper = nullptr;
};

/// Exact unordered tree edit distance by branch and bound over Tai mappings.
/// t1 nodes are decided in preorder (map to a compatible t2 node in
/// ascending id order, then delete); a branch is pruned when its accumulated
/// cost plus an admissible completion bound exceeds the incumbent. The first
/// optimum in this DFS order is the reported witness, which makes the result
/// deterministic. On budget exhaustion the best upper bound found so far is
/// returned with optimal = false.
TedResult ted_unordered(const LabeledTree& t1, const LabeledTree& t2,
                        const CostModel& c, const UnorderedOptions& opts = {});

/// Convenience overload for variable-free trees; warm-starts from the
/// ordered distance, which is a valid unordered upper bound.
TedResult ted_unordered(const Tree& t1, const Tree& t2, const CostModel& c,
                        const SearchLimits& limits = {});

/// Admissible lower bound: max of the size-difference bound and a
/// label-histogram bound (equal labels matched greedily, remaining nodes
/// charged the cheapest way they could possibly be resolved).
double unordered_lower_bound(const LabeledTree& t1, const LabeledTree& t2,
                             const CostModel& c);
double unordered_lower_bound(const Tree& t1, const Tree& t2,
                             const CostModel& c);

}  // namespace vted
