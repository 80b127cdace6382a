#include "vted/mapping.hpp"

#include <algorithm>
#include <stdexcept>

namespace vted {

void EditMapping::sort_canonical() { std::sort(pairs.begin(), pairs.end()); }

namespace {
// v strictly left of v': disjoint subtrees, v first in preorder
bool left_of(const Tree& t, int v, int w) {
  return v < w && !t.is_ancestor(v, w);
}
}  // namespace

std::string check_mapping(const EditMapping& m, const Tree& t1, const Tree& t2,
                          TreeOrder order) {
  const auto& pairs = m.pairs;
  for (const auto& [v, w] : pairs) {
    if (v < 0 || v >= t1.size()) return "t1 node id out of range";
    if (w < 0 || w >= t2.size()) return "t2 node id out of range";
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto [v1, w1] = pairs[i];
      auto [v2, w2] = pairs[j];
      if (v1 == v2 || w1 == w2) return "not one-to-one";
      if (t1.is_ancestor(v1, v2) != t2.is_ancestor(w1, w2) ||
          t1.is_ancestor(v2, v1) != t2.is_ancestor(w2, w1))
        return "ancestor order not preserved";
      if (order == TreeOrder::Ordered &&
          left_of(t1, v1, v2) != left_of(t2, w1, w2))
        return "sibling order not preserved";
    }
  return "";
}

double mapping_cost(const EditMapping& m, const LabeledTree& t1,
                    const LabeledTree& t2, const CostModel& c,
                    TreeOrder order) {
  if (std::string err = check_mapping(m, *t1.tree, *t2.tree, order);
      !err.empty())
    throw std::invalid_argument("invalid mapping: " + err);

  std::vector<char> used1(t1.size(), 0), used2(t2.size(), 0);
  double total = 0.0;
  for (const auto& [v, w] : m.pairs) {
    used1[v] = used2[w] = 1;
    total += c.gamma(t1.labels[v], t2.labels[w]);
  }
  for (int v = 0; v < t1.size(); ++v)
    if (!used1[v]) total += c.gamma_delete(t1.labels[v]);
  for (int w = 0; w < t2.size(); ++w)
    if (!used2[w]) total += c.gamma_insert(t2.labels[w]);
  return total;
}

double mapping_cost(const EditMapping& m, const Tree& t1, const Tree& t2,
                    const CostModel& c, TreeOrder order) {
  return mapping_cost(m, plain_labels(t1), plain_labels(t2), c, order);
}

}  // namespace vted
