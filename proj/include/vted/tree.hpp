#pragma once

#include <set>
#include <string>
#include <vector>

#include "vted/label.hpp"

namespace vted {

/// Rooted, child-ordered expression tree.
///
/// Nodes are stored in DFS preorder: node 0 is the root and the subtree of
/// node v occupies the contiguous id range [v, v + subtree_size(v)). All
/// mappings and witnesses are reported in these preorder ids.
class Tree {
 public:
  struct Node {
    Label label;
    int parent = -1;
    std::vector<int> children;
    bool operator==(const Node&) const = default;
  };

  static Tree leaf(Label l);
  static Tree branch(Label l, std::vector<Tree> subtrees);

  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  const Node& node(int v) const { return nodes_[v]; }
  const Label& label(int v) const { return nodes_[v].label; }
  int subtree_size(int v) const { return sizes_[v]; }
  bool is_leaf(int v) const { return nodes_[v].children.empty(); }

  /// Proper-ancestor test in O(1) via the preorder interval of `a`.
  bool is_ancestor(int a, int b) const {
    return a < b && b < a + sizes_[a];
  }

  int max_outdegree() const;

  /// Order-sensitive structural equality (labels and child order).
  bool operator==(const Tree&) const = default;

 private:
  std::vector<Node> nodes_;
  std::vector<int> sizes_;

  void append_subtree(const Tree& t, int parent);
  void compute_sizes();
};

std::set<std::string> variables_of(const Tree& t);
bool has_variables(const Tree& t);

/// Canonical textual dump: `label` for a leaf, `label(c1,c2,...)` otherwise,
/// with no whitespace. Variables are printed as-is.
std::string dump_tree(const Tree& t);

struct EulerToken {
  bool open = true;
  std::string label;
  bool operator==(const EulerToken&) const = default;
};

/// DFS open/close serialization with variables renamed to $1, $2, ... in
/// order of first occurrence, so two strings compare equal exactly when the
/// trees are identical up to a consistent variable renaming.
struct EulerString {
  std::vector<EulerToken> tokens;
  bool operator==(const EulerString&) const = default;
  std::string to_string() const;
};

EulerString euler_string(const Tree& t);

}  // namespace vted
