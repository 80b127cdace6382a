#pragma once

#include <cstdint>

#include "vted/cost.hpp"
#include "vted/mapping.hpp"
#include "vted/tree.hpp"

namespace vted {

struct TedResult {
  double distance = 0.0;
  EditMapping mapping;
  bool optimal = true;
  bool found_witness = true;
  std::uint64_t expansions = 0;
};

/// Exact ordered tree edit distance by the keyroot/forest dynamic program,
/// with a witness mapping recovered by backtrace. Ties are broken toward
/// mapping (relabel) over delete+insert.
TedResult ted_ordered(const LabeledTree& t1, const LabeledTree& t2,
                      const CostModel& c);

/// Convenience overload; rejects trees containing variables.
TedResult ted_ordered(const Tree& t1, const Tree& t2, const CostModel& c);

/// Polynomial zero-distance test for ordered trees with variables: true iff
/// the canonical Euler strings coincide.
bool iso_ordered_vars(const Tree& t1, const Tree& t2);

}  // namespace vted
