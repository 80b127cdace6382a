#pragma once

#include <set>
#include <string>
#include <vector>

#include "vted/tree.hpp"

namespace vted {

/// Simple undirected graph with vertex labels. No self-loops, no
/// multi-edges.
struct LabeledGraph {
  int n = 0;
  std::vector<std::string> labels;       // size n; defaults to "a"
  std::set<std::pair<int, int>> edges;   // stored with u < v

  explicit LabeledGraph(int n_ = 0);
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  int max_degree() const;
};

struct CliqueInstance {
  Tree t1;
  Tree t2;
  double threshold;  // n2 - n1 under unit cost
};

/// Clique gadget: T1 encodes a k-clique template (root, k children, k^2
/// variable leaves X_i_j with X_i_j = X_j_i), T2 encodes the graph (root, n
/// children, n^2 leaves: Y_i_j for adjacent-or-equal (i, j), otherwise a
/// distinct constant b_i_j). G has a k-clique iff the ordered distance with
/// variables is at most n2 - n1 under unit cost.
CliqueInstance clique_to_trees(const LabeledGraph& g, int k);

/// Zero-distance gadget: tree edges, plus one new `$a` vertex per variable X
/// adjacent to all former X-leaves, which are relabeled `$b`. The root
/// vertex's label is tagged so that the graphs are isomorphic exactly when
/// the unordered distance with variables is zero.
LabeledGraph gi_gadget(const Tree& t);

/// Bounded-degree variant: instead of one hub per variable, a pruned copy of
/// the tree (keeping X-leaves and the branching nodes above them) is linked
/// leaf-to-leaf, so every vertex degree stays within max(input degree, 2).
LabeledGraph gi_gadget_bounded(const Tree& t);

/// Exhaustive subset check; |V| <= 10 enforced.
bool bruteforce_clique(const LabeledGraph& g, int k);

/// Exhaustive label- and adjacency-respecting backtracking; |V| <= 24
/// enforced (the zero-distance gadgets of small trees exceed 10 vertices).
bool graph_iso_bruteforce(const LabeledGraph& g1, const LabeledGraph& g2);

/// Rewrites every node with more than max_out children into a left-leaning
/// comb of `$cat` nodes, each with at most max_out children, preserving leaf
/// order. Zero-distance (ordered, with variables) is preserved.
Tree star_encode(const Tree& t, int max_out);

/// Graph file: first non-comment line `n`, then optional `v <i> <label>`
/// lines and `u v` edge lines (0-based). `#` starts a comment.
LabeledGraph parse_graph_file(const std::string& text);
std::string dump_graph(const LabeledGraph& g);

}  // namespace vted
