#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "vted/parse.hpp"
#include "vted/reductions.hpp"
#include "vted/ted_ordered.hpp"
#include "vted/var_dist.hpp"

using namespace vted;

namespace {
const CostModel kUnit = CostModel::unit();

bool var_dist_is_zero(const Tree& a, const Tree& b) {
  VarDistOptions opts;
  return dist_at_most(a, b, 0.0, kUnit, opts) == ThresholdAnswer::Yes;
}

LabeledGraph complete_graph(int n) {
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

LabeledGraph path_graph(int n) {
  LabeledGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}
}  // namespace

TEST_CASE("clique gadget sizes") {
  LabeledGraph g(4);
  g.add_edge(0, 1);
  CliqueInstance inst = clique_to_trees(g, 3);
  CHECK(inst.t1.size() == 13);  // 1 + k + k^2
  CHECK(inst.t2.size() == 21);  // 1 + n + n^2
  CHECK(inst.threshold == 8);
  CHECK(variables_of(inst.t1).size() == 6);  // one per unordered pair (i<=j)
}

TEST_CASE("clique gadget decides the clique question") {
  VarDistOptions ordered;
  ordered.mode = TreeOrder::Ordered;

  SUBCASE("complete graph on three vertices") {
    CliqueInstance inst = clique_to_trees(complete_graph(3), 3);
    CHECK(dist_with_vars(inst.t1, inst.t2, kUnit, ordered).distance <=
          inst.threshold);
  }
  SUBCASE("triangle minus an edge") {
    LabeledGraph g = complete_graph(3);
    g.edges.erase({1, 2});
    CliqueInstance inst = clique_to_trees(g, 3);
    CHECK(dist_with_vars(inst.t1, inst.t2, kUnit, ordered).distance >
          inst.threshold);
  }
  SUBCASE("all graphs on up to four vertices, k in {2,3}") {
    for (int n : {2, 3, 4}) {
      int pairs = n * (n - 1) / 2;
      for (int mask = 0; mask < (1 << pairs); ++mask) {
        LabeledGraph g(n);
        int bit = 0;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v, ++bit)
            if (mask & (1 << bit)) g.add_edge(u, v);
        for (int k : {2, 3}) {
          if (k > n) continue;
          CliqueInstance inst = clique_to_trees(g, k);
          bool has_clique = bruteforce_clique(g, k);
          bool within = dist_with_vars(inst.t1, inst.t2, kUnit, ordered)
                            .distance <= inst.threshold;
          CHECK(has_clique == within);
        }
      }
    }
  }
}

TEST_CASE("brute-force clique oracle") {
  CHECK(bruteforce_clique(complete_graph(4), 4));
  CHECK_FALSE(bruteforce_clique(path_graph(4), 3));
  CHECK(bruteforce_clique(path_graph(4), 2));
  CHECK_FALSE(bruteforce_clique(complete_graph(3), 4));
  LabeledGraph big(11);
  CHECK_THROWS_AS(bruteforce_clique(big, 2), std::invalid_argument);
}

TEST_CASE("brute-force graph isomorphism oracle") {
  SUBCASE("relabelings of the same graph are isomorphic") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 20; ++round) {
      int n = 3 + static_cast<int>(rng() % 5);
      LabeledGraph g(n);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (rng() % 2) g.add_edge(u, v);
      for (int v = 0; v < n; ++v) g.labels[v] = (rng() % 2) ? "p" : "q";
      // permute vertex ids
      std::vector<int> perm(n);
      for (int v = 0; v < n; ++v) perm[v] = v;
      for (int v = n - 1; v > 0; --v)
        std::swap(perm[v], perm[rng() % (v + 1)]);
      LabeledGraph h(n);
      for (int v = 0; v < n; ++v) h.labels[perm[v]] = g.labels[v];
      for (const auto& [a, b] : g.edges) h.add_edge(perm[a], perm[b]);
      CHECK(graph_iso_bruteforce(g, h));
    }
  }
  SUBCASE("labels matter") {
    LabeledGraph g(2), h(2);
    g.add_edge(0, 1);
    h.add_edge(0, 1);
    g.labels = {"a", "b"};
    h.labels = {"a", "a"};
    CHECK_FALSE(graph_iso_bruteforce(g, h));
  }
  SUBCASE("size guard") {
    LabeledGraph g(25), h(25);
    CHECK_THROWS_AS(graph_iso_bruteforce(g, h), std::invalid_argument);
  }
}

TEST_CASE("zero-distance gadget structure") {
  SUBCASE("variable-free tree maps to itself") {
    Tree t = parse_expr("(x+y)*z");
    LabeledGraph g = gi_gadget(t);
    CHECK(g.n == t.size());  // no added vertices
    CHECK(g.edges.size() == static_cast<std::size_t>(t.size() - 1));
    for (int v = 1; v < t.size(); ++v) CHECK(g.labels[v] == t.label(v).symbol);
    CHECK(gi_gadget_bounded(t).n == t.size());
  }
  SUBCASE("one variable at three leaves adds one hub of degree three") {
    Tree t = parse_tree_dump("f(X,g(X,X))");
    LabeledGraph g = gi_gadget(t);
    CHECK(g.n == t.size() + 1);
    CHECK(g.degree(t.size()) == 3);
    CHECK(g.labels[t.size()] == "$a");
  }
}

TEST_CASE("gadget isomorphism decides zero distance") {
  std::mt19937_64 rng(42);
  oracle::TreeGenOptions gen;
  gen.max_nodes = 6;
  gen.variables = {"X", "Y"};
  int zero_cases = 0;
  for (int round = 0; round < 60; ++round) {
    Tree a = oracle::random_tree(rng, gen);
    // half the rounds compare against a renamed clone to hit distance zero
    Tree b = (round % 2 == 0)
                 ? oracle::rename_variables(a, "R")
                 : oracle::rename_variables(oracle::random_tree(rng, gen), "R");
    bool zero = var_dist_is_zero(a, b);
    if (zero) ++zero_cases;
    CHECK(graph_iso_bruteforce(gi_gadget(a), gi_gadget(b)) == zero);
    CHECK(graph_iso_bruteforce(gi_gadget_bounded(a), gi_gadget_bounded(b)) ==
          zero);
  }
  CHECK(zero_cases >= 30);  // the clone rounds all land at zero
}

TEST_CASE("rooted pairs that are isomorphic as bare graphs stay separated") {
  // as unrooted labeled graphs these two are identical; the root tag keeps
  // the gadgets apart, matching their nonzero tree distance
  Tree a = parse_tree_dump("a(b)");
  Tree b = parse_tree_dump("b(a)");
  CHECK_FALSE(var_dist_is_zero(a, b));
  CHECK_FALSE(graph_iso_bruteforce(gi_gadget(a), gi_gadget(b)));
  CHECK_FALSE(graph_iso_bruteforce(gi_gadget_bounded(a), gi_gadget_bounded(b)));
}

TEST_CASE("bounded gadget keeps degrees small") {
  std::mt19937_64 rng(43);
  oracle::TreeGenOptions gen;
  gen.min_nodes = 3;
  gen.max_nodes = 10;
  gen.variables = {"X", "Y"};
  gen.variable_percent = 60;
  for (int round = 0; round < 60; ++round) {
    Tree t = oracle::random_tree(rng, gen);
    // tree degree counts the parent edge too
    int tree_degree = 0;
    for (int v = 0; v < t.size(); ++v) {
      int d = static_cast<int>(t.node(v).children.size()) + (v == 0 ? 0 : 1);
      tree_degree = std::max(tree_degree, d);
    }
    LabeledGraph g = gi_gadget_bounded(t);
    CHECK(g.max_degree() <= tree_degree);
  }
}

TEST_CASE("star encoding") {
  SUBCASE("within bound is unchanged") {
    Tree t = parse_expr("(x+y)*z");
    CHECK(star_encode(t, 2) == t);
  }
  SUBCASE("five-leaf star folds into a comb") {
    Tree star = parse_tree_dump("r(c1,c2,c3,c4,c5)");
    Tree enc = star_encode(star, 2);
    CHECK(enc.max_outdegree() == 2);
    int internal = 0, depth = 0;
    for (int v = 0; v < enc.size(); ++v) {
      if (!enc.is_leaf(v)) ++internal;
      int d = 0;
      for (int u = v; u != 0; u = enc.node(u).parent) ++d;
      depth = std::max(depth, d);
    }
    CHECK(internal == 4);
    CHECK(depth == 4);
    // leaf order is preserved
    std::vector<std::string> leaves;
    for (int v = 0; v < enc.size(); ++v)
      if (enc.is_leaf(v)) leaves.push_back(enc.label(v).symbol);
    CHECK(leaves == std::vector<std::string>{"c1", "c2", "c3", "c4", "c5"});
  }
  SUBCASE("outdegree bound holds on random trees") {
    std::mt19937_64 rng(44);
    oracle::TreeGenOptions gen;
    gen.max_nodes = 12;
    for (int round = 0; round < 40; ++round) {
      Tree t = oracle::random_tree(rng, gen);
      for (int bound : {2, 3}) CHECK(star_encode(t, bound).max_outdegree() <= bound);
    }
  }
  SUBCASE("zero-distance is preserved") {
    std::mt19937_64 rng(45);
    oracle::TreeGenOptions gen;
    gen.max_nodes = 8;
    gen.variables = {"X", "Y"};
    for (int round = 0; round < 60; ++round) {
      Tree a = oracle::random_tree(rng, gen);
      Tree b = (round % 2 == 0)
                   ? oracle::rename_variables(a, "R")
                   : oracle::rename_variables(oracle::random_tree(rng, gen), "R");
      CHECK(iso_ordered_vars(a, b) ==
            iso_ordered_vars(star_encode(a, 2), star_encode(b, 2)));
    }
  }
  SUBCASE("max_out below two is rejected") {
    CHECK_THROWS_AS(star_encode(parse_expr("a"), 1), std::invalid_argument);
  }
}

TEST_CASE("graph file round trip") {
  LabeledGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.labels = {"a", "$b", "c"};
  LabeledGraph h = parse_graph_file(dump_graph(g));
  CHECK(h.n == g.n);
  CHECK(h.labels == g.labels);
  CHECK(h.edges == g.edges);

  LabeledGraph plain = parse_graph_file("3\n0 1\n1 2\n# comment\n");
  CHECK(plain.n == 3);
  CHECK(plain.labels == std::vector<std::string>{"a", "a", "a"});
  CHECK(plain.has_edge(0, 1));

  CHECK_THROWS_AS(parse_graph_file(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph_file("2\n0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph_file("2\n0 5\n"), std::invalid_argument);
}
