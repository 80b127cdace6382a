#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vted/budget.hpp"
#include "vted/cost.hpp"
#include "vted/mapping.hpp"
#include "vted/ted_unordered.hpp"

namespace vted {

/// A substitution, represented by what actually matters for cost: an
/// injective pairing between the two trees' variable sets. Paired variables
/// share one fresh constant; every unmatched variable of either tree gets
/// its own fresh constant, distinct from all others.
struct Substitution {
  std::vector<std::pair<std::string, std::string>> matches;  // (t1 var, t2 var)
  bool operator==(const Substitution&) const = default;
};

enum class Side { Left, Right };

/// Number of total injective matchings from the smaller variable set into
/// the larger one, i.e. m_big! / (m_big - m_small)!, saturating at uint64 max.
std::uint64_t substitution_count(std::size_t m1, std::size_t m2);

/// All essentially different substitutions, in deterministic order:
/// lexicographic by smaller-side variable name, then image name. Throws when
/// the count exceeds 2^20 (use dist_with_vars, which enumerates lazily).
std::vector<Substitution> enumerate_substitutions(
    const std::set<std::string>& vars1, const std::set<std::string>& vars2);

/// Effective labels after applying a substitution to one side: matched pairs
/// share a fresh class, unmatched variables get unique classes, constants
/// are untouched.
LabeledTree apply_substitution(const Tree& t, const Substitution& theta,
                               Side side);

struct VarDistResult {
  double distance = 0.0;
  Substitution theta;
  EditMapping mapping;
  bool optimal = true;
  std::uint64_t substitutions_enumerated = 0;
};

struct VarDistOptions {
  TreeOrder mode = TreeOrder::Unordered;
  SearchLimits limits{};
  BudgetState* budget = nullptr;  // optional shared budget
  int jobs = 1;
};

/// Tree edit distance with variables: minimum of the variable-free distance
/// over all essentially different substitutions. Substitutions are processed
/// with the running minimum as a shared incumbent (strict pruning), and the
/// witness is the first substitution in enumeration order attaining the
/// minimum, independent of the number of jobs.
VarDistResult dist_with_vars(const Tree& t1, const Tree& t2,
                             const CostModel& c,
                             const VarDistOptions& opts = {});

enum class ThresholdAnswer { Yes, No, Unknown };

/// Decision version: is dist(t1, t2) <= d? Short-circuits on the first
/// substitution achieving <= d. Unknown only when the budget ran out before
/// every substitution was decided.
ThresholdAnswer dist_at_most(const Tree& t1, const Tree& t2, double d,
                             const CostModel& c,
                             const VarDistOptions& opts = {});

}  // namespace vted
