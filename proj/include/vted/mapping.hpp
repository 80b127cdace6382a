#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vted/cost.hpp"
#include "vted/tree.hpp"

namespace vted {

enum class TreeOrder { Ordered, Unordered };

/// One-to-one, ancestor-preserving node correspondence between two trees
/// (sibling-order preserving as well in ordered mode). Pairs are
/// (t1 preorder id, t2 preorder id).
struct EditMapping {
  std::vector<std::pair<int, int>> pairs;

  void sort_canonical();
  bool operator==(const EditMapping&) const = default;
};

/// Empty string when the mapping is valid for (t1, t2), otherwise a short
/// description of the first violated condition.
std::string check_mapping(const EditMapping& m, const Tree& t1, const Tree& t2,
                          TreeOrder order);

/// Cost of a mapping: gamma over mapped pairs plus deletion of unmapped t1
/// nodes plus insertion of unmapped t2 nodes. Throws std::invalid_argument
/// on an invalid mapping.
double mapping_cost(const EditMapping& m, const LabeledTree& t1,
                    const LabeledTree& t2, const CostModel& c,
                    TreeOrder order = TreeOrder::Unordered);

/// Convenience overload for variable-free trees.
double mapping_cost(const EditMapping& m, const Tree& t1, const Tree& t2,
                    const CostModel& c, TreeOrder order = TreeOrder::Unordered);

}  // namespace vted
