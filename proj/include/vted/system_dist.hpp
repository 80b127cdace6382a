#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vted/budget.hpp"
#include "vted/cost.hpp"
#include "vted/tree.hpp"
#include "vted/var_dist.hpp"

namespace vted {

/// A system dX_i/dt = f_i(X_1,...,X_m): ordered equations (lhs variable,
/// rhs tree). The set of lhs symbols is the variable set of every rhs.
struct OdeSystem {
  std::vector<std::pair<std::string, Tree>> equations;

  std::vector<std::string> lhs_symbols() const;
  /// Throws std::invalid_argument on duplicate lhs symbols, rhs variables
  /// that are not lhs symbols, or an empty system.
  void validate() const;
};

struct SystemDistResult {
  double distance = 0.0;
  /// Matched equations as (x index, y index), 0-based, in x order.
  std::vector<std::pair<int, int>> pairing;
  std::vector<double> per_pair;     // distance contributed by each pair
  std::vector<int> deleted;         // unmatched y equation indices
  std::vector<double> deletion_costs;
  bool optimal = true;
  /// True when the inputs were swapped internally because sx had more
  /// equations; pairing/deleted still refer to the original argument order.
  bool swapped = false;
};

struct SystemOptions {
  SearchLimits limits{};
  int jobs = 1;
};

/// Cost of deleting a whole tree: sum of gamma(label, gap) over its nodes.
double delete_cost(const LabeledTree& t, const CostModel& c);
/// Convenience overload; rejects trees containing variables.
double delete_cost(const Tree& t, const CostModel& c);

/// System distance with one global substitution: minimize, over injective
/// pairings of the x variables into the y variables, the sum of unordered
/// tree distances between paired equations (under that shared substitution)
/// plus the deletion cost of unmatched y equations.
SystemDistResult system_dist(const OdeSystem& sx, const OdeSystem& sy,
                             const CostModel& c, const SystemOptions& opts = {});

/// Pseudo system distance: per-pair independent substitutions. Builds the
/// m2 x m2 weight matrix (dist_with_vars for real rows, deletion cost for
/// dummy rows) and solves a minimum-weight perfect matching.
SystemDistResult system_pdist(const OdeSystem& sx, const OdeSystem& sy,
                              const CostModel& c, const SystemOptions& opts = {});

/// Exact minimum-weight perfect matching on a square non-negative matrix
/// (Hungarian algorithm, O(n^3)). Fills row_to_col and returns the total
/// weight. Throws std::invalid_argument on a non-square matrix.
double hungarian_matching(const std::vector<std::vector<double>>& w,
                          std::vector<int>& row_to_col);

}  // namespace vted
