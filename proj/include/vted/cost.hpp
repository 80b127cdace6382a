#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vted/tree.hpp"

namespace vted {

/// A label as seen by the cost function: either an ordinary constant symbol
/// or one of the fresh-constant classes a substitution introduced. Only the
/// class identity of a fresh constant matters for costing.
struct EffLabel {
  std::string symbol;    // ordinary constant, when fresh_class < 0
  int fresh_class = -1;  // >= 0: substituted-variable class, symbol unused

  bool fresh() const { return fresh_class >= 0; }
  bool operator==(const EffLabel&) const = default;
};

/// A tree together with the effective label of every node. Does not own the
/// tree; keep it alive while the view is in use.
struct LabeledTree {
  const Tree* tree = nullptr;
  std::vector<EffLabel> labels;  // indexed by preorder id

  int size() const { return tree ? tree->size() : 0; }
};

/// View of a variable-free tree; throws std::invalid_argument if any
/// variable is present.
LabeledTree plain_labels(const Tree& t);

struct MetricViolation {
  std::string axiom;  // "identity", "symmetry", "nonnegativity", "triangle"
  std::string x, y, z;
  std::string to_string() const;
};

/// Cost function gamma over labels plus the gap symbol. Relabel, delete and
/// insert entries fall back to a shared default; fresh constants are costed
/// by class identity: equal class 0, distinct classes var_pair, fresh vs
/// ordinary var_const.
class CostModel {
 public:
  static CostModel unit() { return CostModel{}; }

  void set_default(double c) { default_ = c; }
  void set_var_pair(double c) { var_pair_ = c; }
  void set_var_const(double c) { var_const_ = c; }
  void set_relabel(const std::string& a, const std::string& b, double c);
  void set_relabel_directed(const std::string& a, const std::string& b, double c);
  void set_delete(const std::string& a, double c) { delete_[a] = c; }
  void set_insert(const std::string& a, double c) { insert_[a] = c; }

  double default_cost() const { return default_; }
  double var_pair() const { return var_pair_; }
  double var_const() const { return var_const_; }

  double gamma(const EffLabel& a, const EffLabel& b) const;
  double gamma_delete(const EffLabel& a) const;
  double gamma_insert(const EffLabel& a) const;

  /// Symbols mentioned anywhere in the tables.
  std::vector<std::string> declared_symbols() const;

  /// Checks the four metric axioms over alphabet ∪ declared symbols ∪ the
  /// gap symbol ∪ two representative fresh classes. Returns the first
  /// violation found, or nullopt when the model is a metric.
  std::optional<MetricViolation> validate_metric(
      const std::vector<std::string>& alphabet = {}) const;

 private:
  double default_ = 1.0;
  double var_pair_ = 1.0;
  double var_const_ = 1.0;
  std::map<std::pair<std::string, std::string>, double> relabel_;
  std::map<std::string, double> delete_;
  std::map<std::string, double> insert_;
};

/// Line-oriented cost file:
///   relabel a b 2.5
///   delete a 1.0
///   insert a 1.0
///   default 1.0
///   varpair 1.0
///   varconst 1.0
/// `#` starts a comment. `relabel` sets both directions.
CostModel parse_cost_file(const std::string& text);

}  // namespace vted
