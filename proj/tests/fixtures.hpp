#pragma once

// Hand-built instances shared by the unit and acceptance suites.

#include "vted/parse.hpp"
#include "vted/tree.hpp"

namespace fixtures {

// Pair of variable-bearing trees whose distance is 5 under unit cost in both
// ordered and unordered modes; the witness pairs X with U and Y with V.
inline vted::Tree witness_pair_left() {
  return vted::parse_tree_dump("a(b(X,Y),c(Z),W)");
}
inline vted::Tree witness_pair_right() {
  return vted::parse_tree_dump("a(h(f(U,V),g),U)");
}

// Pair with m1 = 2, m2 = 3: six substitutions, distance 2, attained exactly
// by X<->U,Y<->W and X<->V,Y<->W.
inline vted::Tree six_subst_left() {
  return vted::parse_tree_dump("a(b(X),Y,Y)");
}
inline vted::Tree six_subst_right() {
  return vted::parse_tree_dump("a(b(U,V),W,d)");
}

// Elementary system pair: Dist = 3 attained uniquely by pairing the first
// x equation with the third y equation and the second with the second; the
// leftover y equation (3 nodes) is deleted.
inline vted::OdeSystem small_system_x() {
  return vted::parse_system(
      "dX1/dt = X1 + X2\n"
      "dX2/dt = c * X2\n");
}
inline vted::OdeSystem small_system_y() {
  return vted::parse_system(
      "dY1/dt = Y2 - Y1\n"
      "dY2/dt = c * Y2\n"
      "dY3/dt = Y3 + Y2\n");
}

}  // namespace fixtures
