#include "vted/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vted {

LabeledGraph::LabeledGraph(int n_) : n(n_), labels(n_, "a") {}

void LabeledGraph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw std::invalid_argument("edge endpoint out of range");
  edges.insert({std::min(u, v), std::max(u, v)});
}

bool LabeledGraph::has_edge(int u, int v) const {
  return edges.count({std::min(u, v), std::max(u, v)}) > 0;
}

int LabeledGraph::degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges)
    if (a == v || b == v) ++d;
  return d;
}

int LabeledGraph::max_degree() const {
  std::vector<int> deg(n, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

CliqueInstance clique_to_trees(const LabeledGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("clique size must be positive");
  int n = g.n;
  if (n < 1) throw std::invalid_argument("graph must be non-empty");

  auto pair_name = [](char head, int i, int j) {
    return std::string(1, head) + std::to_string(std::min(i, j)) + "_" +
           std::to_string(std::max(i, j));
  };

  std::vector<Tree> t1_children;
  for (int i = 1; i <= k; ++i) {
    std::vector<Tree> leaves;
    for (int j = 1; j <= k; ++j)
      leaves.push_back(Tree::leaf(variable(pair_name('X', i, j))));
    t1_children.push_back(Tree::branch(constant("a"), std::move(leaves)));
  }
  Tree t1 = Tree::branch(constant("a"), std::move(t1_children));

  // Diagonal positions carry the variable Y_i_i as well (every vertex is
  // treated as adjacent to itself); a k-clique then embeds at zero cost and
  // the if-and-only-if with threshold n2 - n1 goes through.
  std::vector<Tree> t2_children;
  for (int i = 1; i <= n; ++i) {
    std::vector<Tree> leaves;
    for (int j = 1; j <= n; ++j) {
      if (i == j || g.has_edge(i - 1, j - 1))
        leaves.push_back(Tree::leaf(variable(pair_name('Y', i, j))));
      else
        leaves.push_back(Tree::leaf(constant(
            "b" + std::to_string(i) + "_" + std::to_string(j))));
    }
    t2_children.push_back(Tree::branch(constant("a"), std::move(leaves)));
  }
  Tree t2 = Tree::branch(constant("a"), std::move(t2_children));

  CliqueInstance inst{std::move(t1), std::move(t2), 0.0};
  inst.threshold = inst.t2.size() - inst.t1.size();
  return inst;
}

namespace {

constexpr const char* kHubLabel = "$a";
constexpr const char* kVarLeafLabel = "$b";
constexpr const char* kRootTag = "$root|";

// Base graph: one vertex per tree node, tree edges, variable leaves
// relabeled, root tagged so isomorphism respects rootedness.
LabeledGraph tree_skeleton(const Tree& t) {
  LabeledGraph g(t.size());
  for (int v = 0; v < t.size(); ++v) {
    const Label& l = t.label(v);
    g.labels[v] = l.is_variable() ? kVarLeafLabel : l.symbol;
    if (v != 0) g.add_edge(t.node(v).parent, v);
  }
  g.labels[0] = kRootTag + g.labels[0];
  return g;
}

std::vector<std::vector<int>> leaves_by_variable(const Tree& t,
                                                 std::vector<std::string>& names) {
  std::map<std::string, std::vector<int>> groups;
  for (int v = 0; v < t.size(); ++v)
    if (t.label(v).is_variable()) groups[t.label(v).symbol].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [name, leaves] : groups) {
    names.push_back(name);
    out.push_back(std::move(leaves));
  }
  return out;
}

}  // namespace

LabeledGraph gi_gadget(const Tree& t) {
  LabeledGraph g = tree_skeleton(t);
  std::vector<std::string> names;
  auto groups = leaves_by_variable(t, names);
  for (const auto& leaves : groups) {
    int hub = g.n;
    g.n += 1;
    g.labels.push_back(kHubLabel);
    for (int leaf : leaves) g.add_edge(hub, leaf);
  }
  return g;
}

LabeledGraph gi_gadget_bounded(const Tree& t) {
  LabeledGraph g = tree_skeleton(t);
  std::vector<std::string> names;
  auto groups = leaves_by_variable(t, names);

  for (const auto& leaves : groups) {
    std::vector<char> has_var(t.size(), 0);
    for (int leaf : leaves) has_var[leaf] = 1;
    // count, per node, how many child subtrees contain leaves of this
    // variable (children have larger preorder ids: one backward pass)
    std::vector<int> child_subtrees(t.size(), 0);
    std::vector<char> subtree_has(t.size(), 0);
    for (int v = t.size() - 1; v >= 0; --v) {
      if (has_var[v]) subtree_has[v] = 1;
      for (int c : t.node(v).children)
        if (subtree_has[c]) {
          subtree_has[v] = 1;
          ++child_subtrees[v];
        }
    }
    // keep the variable's leaves and every node branching over them
    std::vector<int> copy_of(t.size(), -1);
    for (int v = 0; v < t.size(); ++v)
      if (has_var[v] || child_subtrees[v] >= 2) {
        copy_of[v] = g.n;
        g.n += 1;
        g.labels.push_back(kHubLabel);
      }
    // connect each kept node to its nearest kept proper ancestor
    for (int v = 0; v < t.size(); ++v) {
      if (copy_of[v] < 0) continue;
      int p = t.node(v).parent;
      while (p >= 0 && copy_of[p] < 0) p = t.node(p).parent;
      if (p >= 0) g.add_edge(copy_of[v], copy_of[p]);
    }
    // link leaf copies to the original leaves
    for (int leaf : leaves) g.add_edge(copy_of[leaf], leaf);
  }
  return g;
}

bool bruteforce_clique(const LabeledGraph& g, int k) {
  if (g.n > 10) throw std::invalid_argument("bruteforce_clique: |V| > 10");
  if (k <= 0) return true;  // the empty clique
  if (k > g.n) return false;
  std::vector<int> chosen;
  // enumerate k-subsets with adjacency pruning
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int v = start; v < g.n; ++v) {
      bool ok = true;
      for (int u : chosen)
        if (!g.has_edge(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(v);
      if (rec(v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

bool graph_iso_bruteforce(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.n > 24 || g2.n > 24)
    throw std::invalid_argument("graph_iso_bruteforce: |V| > 24");
  if (g1.n != g2.n || g1.edges.size() != g2.edges.size()) return false;

  int n = g1.n;
  std::vector<std::vector<char>> adj1(n, std::vector<char>(n, 0)),
      adj2(n, std::vector<char>(n, 0));
  std::vector<int> deg1(n, 0), deg2(n, 0);
  for (const auto& [a, b] : g1.edges) {
    adj1[a][b] = adj1[b][a] = 1;
    ++deg1[a];
    ++deg1[b];
  }
  for (const auto& [a, b] : g2.edges) {
    adj2[a][b] = adj2[b][a] = 1;
    ++deg2[a];
    ++deg2[b];
  }
  // quick reject on (label, degree) multisets
  std::multiset<std::pair<std::string, int>> sig1, sig2;
  for (int v = 0; v < n; ++v) {
    sig1.insert({g1.labels[v], deg1[v]});
    sig2.insert({g2.labels[v], deg2[v]});
  }
  if (sig1 != sig2) return false;

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || g1.labels[v] != g2.labels[w] || deg1[v] != deg2[w])
        continue;
      bool ok = true;
      for (int u = 0; u < v; ++u)
        if (adj1[u][v] != adj2[image[u]][w]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (rec(v + 1)) return true;
      used[w] = 0;
      image[v] = -1;
    }
    return false;
  };
  return rec(0);
}

namespace {
Tree star_encode_rec(const Tree& t, int v, int max_out) {
  std::vector<Tree> children;
  for (int c : t.node(v).children)
    children.push_back(star_encode_rec(t, c, max_out));
  if (children.empty()) return Tree::leaf(t.label(v));
  // left-leaning comb: repeatedly fold the first max_out children into a
  // $cat node until the arity fits
  while (static_cast<int>(children.size()) > max_out) {
    std::vector<Tree> group(children.begin(), children.begin() + max_out);
    Tree packed = Tree::branch(constant("$cat"), std::move(group));
    children.erase(children.begin(), children.begin() + max_out);
    children.insert(children.begin(), std::move(packed));
  }
  return Tree::branch(t.label(v), std::move(children));
}
}  // namespace

Tree star_encode(const Tree& t, int max_out) {
  if (max_out < 2) throw std::invalid_argument("max_out must be at least 2");
  return star_encode_rec(t, 0, max_out);
}

LabeledGraph parse_graph_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_n = false;
  LabeledGraph g;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("graph file line " + std::to_string(line_no) +
                                ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_n) {
      try {
        g = LabeledGraph(std::stoi(first));
      } catch (const std::exception&) {
        fail("expected the vertex count");
      }
      if (g.n < 0) fail("vertex count must be non-negative");
      have_n = true;
      continue;
    }
    if (first == "v") {
      int idx;
      std::string label;
      if (!(ls >> idx >> label)) fail("expected 'v <index> <label>'");
      if (idx < 0 || idx >= g.n) fail("vertex index out of range");
      if (!valid_symbol(label)) fail("invalid vertex label");
      g.labels[idx] = label;
      continue;
    }
    int u, v;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      fail("expected an edge line 'u v'");
      return g;
    }
    if (!(ls >> v)) fail("expected an edge line 'u v'");
    try {
      g.add_edge(u, v);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!have_n) fail("missing vertex count");
  return g;
}

std::string dump_graph(const LabeledGraph& g) {
  std::ostringstream out;
  out << g.n << "\n";
  for (int v = 0; v < g.n; ++v) out << "v " << v << " " << g.labels[v] << "\n";
  for (const auto& [a, b] : g.edges) out << a << " " << b << "\n";
  return out.str();
}

}  // namespace vted
