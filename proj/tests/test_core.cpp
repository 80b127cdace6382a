#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "vted/mapping.hpp"
#include "vted/parse.hpp"
#include "vted/reductions.hpp"
#include "vted/ted_ordered.hpp"
#include "vted/ted_unordered.hpp"
#include "vted/tree.hpp"

using namespace vted;

TEST_CASE("label validity") {
  CHECK_THROWS_AS(constant(""), std::invalid_argument);
  CHECK_THROWS_AS(constant("a b"), std::invalid_argument);
  CHECK_THROWS_AS(constant("a,b"), std::invalid_argument);
  CHECK_THROWS_AS(variable("X;"), std::invalid_argument);
  CHECK(constant("x") != variable("x"));  // kind is part of equality
  CHECK(constant("+") == constant("+"));
}

TEST_CASE("tree construction and preorder ids") {
  Tree t = parse_tree_dump("a(b(X,Y),c(Z),W)");
  CHECK(t.size() == 7);
  CHECK(t.root() == 0);
  CHECK(t.label(0).symbol == "a");
  CHECK(t.label(1).symbol == "b");
  CHECK(t.label(2).symbol == "X");
  CHECK(t.label(4).symbol == "c");
  CHECK(t.label(6).symbol == "W");
  CHECK(t.subtree_size(1) == 3);
  CHECK(t.is_ancestor(0, 6));
  CHECK(t.is_ancestor(1, 2));
  CHECK_FALSE(t.is_ancestor(2, 1));
  CHECK_FALSE(t.is_ancestor(1, 4));
  CHECK_FALSE(t.is_ancestor(3, 3));  // proper

  // every non-root node has exactly one parent and ids are preorder
  for (int v = 1; v < t.size(); ++v) {
    CHECK(t.node(v).parent < v);
    CHECK(t.is_ancestor(t.node(v).parent, v));
  }
}

TEST_CASE("variables appear only at leaves") {
  CHECK_THROWS_AS(Tree::branch(variable("X"), {Tree::leaf(constant("a"))}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_tree_dump("X(a)"), std::runtime_error);
}

TEST_CASE("size examples") {
  CHECK(Tree::leaf(constant("a")).size() == 1);
  CHECK(parse_expr("(x+y)*z").size() == 5);
  LabeledGraph g(3);
  g.add_edge(0, 1);
  CHECK(clique_to_trees(g, 3).t1.size() == 13);  // 1 + k + k^2
}

TEST_CASE("variables_of") {
  Tree t = parse_tree_dump("f(X,g(Y,X))");
  CHECK(variables_of(t) == std::set<std::string>{"X", "Y"});
  CHECK(variables_of(fixtures::six_subst_left()).size() == 2);
  CHECK(variables_of(parse_expr("(x+y)*z")).empty());
  CHECK(has_variables(t));
}

TEST_CASE("euler strings") {
  SUBCASE("leaf") {
    EulerString es = euler_string(Tree::leaf(constant("a")));
    CHECK(es.tokens.size() == 2);
    CHECK(es.tokens[0] == EulerToken{true, "a"});
    CHECK(es.tokens[1] == EulerToken{false, "a"});
  }
  SUBCASE("invariant under consistent renaming") {
    Tree t1 = parse_tree_dump("f(X,g(Y,X))");
    Tree t2 = parse_tree_dump("f(Z,g(W,Z))");
    CHECK(euler_string(t1) == euler_string(t2));
    CHECK(euler_string(t1).to_string() ==
          "(f($1)$1(g($2)$2($1)$1)g)f");
  }
  SUBCASE("repeated variable differs from distinct variables") {
    Tree t1 = parse_expr("(X+Y)*Z");
    Tree t4 = parse_expr("(X+Y)*X");
    CHECK(euler_string(t1) != euler_string(t4));
  }
  SUBCASE("same tree") {
    Tree t = fixtures::witness_pair_left();
    CHECK(euler_string(t) == euler_string(t));
  }
}

TEST_CASE("mapping validation") {
  Tree t1 = parse_tree_dump("a(b(x),y)");
  Tree t2 = parse_tree_dump("a(b(x),y)");

  SUBCASE("one-to-one violations") {
    EditMapping m{{{0, 0}, {0, 1}}};
    CHECK(check_mapping(m, t1, t2, TreeOrder::Unordered) != "");
    EditMapping m2{{{0, 0}, {1, 0}}};
    CHECK(check_mapping(m2, t1, t2, TreeOrder::Unordered) != "");
  }
  SUBCASE("ancestor violation") {
    // 1 is an ancestor of 2 in t1, but their images are unrelated
    EditMapping m{{{1, 1}, {2, 3}}};
    CHECK(check_mapping(m, t1, t2, TreeOrder::Unordered) != "");
  }
  SUBCASE("order violation only matters in ordered mode") {
    Tree s1 = parse_tree_dump("a(x,y)");
    Tree s2 = parse_tree_dump("a(y,x)");
    EditMapping cross{{{1, 2}, {2, 1}}};
    CHECK(check_mapping(cross, s1, s2, TreeOrder::Unordered) == "");
    CHECK(check_mapping(cross, s1, s2, TreeOrder::Ordered) != "");
  }
  SUBCASE("out of range") {
    EditMapping m{{{0, 9}}};
    CHECK(check_mapping(m, t1, t2, TreeOrder::Unordered) != "");
    CHECK_THROWS_AS(mapping_cost(m, t1, t2, CostModel::unit()),
                    std::invalid_argument);
  }
}

TEST_CASE("mapping cost") {
  CostModel unit = CostModel::unit();
  Tree t1 = parse_tree_dump("a(b,c)");
  Tree t2 = parse_tree_dump("a(b,c)");

  SUBCASE("empty mapping deletes and inserts everything") {
    CHECK(mapping_cost(EditMapping{}, t1, t2, unit) == 6);
  }
  SUBCASE("identity on identical trees is free") {
    EditMapping id{{{0, 0}, {1, 1}, {2, 2}}};
    CHECK(mapping_cost(id, t1, t2, unit) == 0);
  }
  SUBCASE("witness of the five-edit pair costs five") {
    Tree a = fixtures::witness_pair_left();
    Tree b = fixtures::witness_pair_right();
    VarDistOptions opts;
    VarDistResult r = dist_with_vars(a, b, CostModel::unit(), opts);
    LabeledTree la = apply_substitution(a, r.theta, Side::Left);
    LabeledTree lb = apply_substitution(b, r.theta, Side::Right);
    CHECK(mapping_cost(r.mapping, la, lb, unit) == 5);
    CHECK(r.distance == 5);
  }
}

TEST_CASE("exhaustive mapping minimum matches the solvers on small trees") {
  std::mt19937_64 rng(20240811);
  CostModel unit = CostModel::unit();
  oracle::TreeGenOptions gen;
  gen.max_nodes = 6;
  for (int round = 0; round < 60; ++round) {
    Tree t1 = oracle::random_tree(rng, gen);
    Tree t2 = oracle::random_tree(rng, gen);
    double expect_o = oracle::ted_bruteforce(t1, t2, unit, TreeOrder::Ordered);
    double expect_u = oracle::ted_bruteforce(t1, t2, unit, TreeOrder::Unordered);
    CHECK(ted_ordered(t1, t2, unit).distance == expect_o);
    CHECK(ted_unordered(t1, t2, unit).distance == expect_u);
  }
}
