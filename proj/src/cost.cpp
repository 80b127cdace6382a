#include "vted/cost.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vted {

LabeledTree plain_labels(const Tree& t) {
  LabeledTree lt;
  lt.tree = &t;
  lt.labels.reserve(t.size());
  for (int v = 0; v < t.size(); ++v) {
    const Label& l = t.label(v);
    if (l.is_variable())
      throw std::invalid_argument(
          "tree contains variable '" + l.symbol +
          "'; apply a substitution before computing a variable-free distance");
    lt.labels.push_back(EffLabel{l.symbol, -1});
  }
  return lt;
}

std::string MetricViolation::to_string() const {
  std::ostringstream os;
  os << axiom << " violated at (" << x << ", " << y;
  if (!z.empty()) os << ", " << z;
  os << ")";
  return os.str();
}

void CostModel::set_relabel(const std::string& a, const std::string& b,
                            double c) {
  set_relabel_directed(a, b, c);
  set_relabel_directed(b, a, c);
}

void CostModel::set_relabel_directed(const std::string& a,
                                     const std::string& b, double c) {
  if (a == b)
    throw std::invalid_argument("relabel cost for equal labels is fixed at 0");
  relabel_[{a, b}] = c;
}

double CostModel::gamma(const EffLabel& a, const EffLabel& b) const {
  if (a.fresh() || b.fresh()) {
    if (a.fresh() && b.fresh())
      return a.fresh_class == b.fresh_class ? 0.0 : var_pair_;
    return var_const_;
  }
  if (a.symbol == b.symbol) return 0.0;
  auto it = relabel_.find({a.symbol, b.symbol});
  return it != relabel_.end() ? it->second : default_;
}

double CostModel::gamma_delete(const EffLabel& a) const {
  if (a.fresh()) return default_;
  auto it = delete_.find(a.symbol);
  return it != delete_.end() ? it->second : default_;
}

double CostModel::gamma_insert(const EffLabel& a) const {
  if (a.fresh()) return default_;
  auto it = insert_.find(a.symbol);
  return it != insert_.end() ? it->second : default_;
}

std::vector<std::string> CostModel::declared_symbols() const {
  std::set<std::string> syms;
  for (const auto& [key, cost] : relabel_) {
    syms.insert(key.first);
    syms.insert(key.second);
  }
  for (const auto& [sym, cost] : delete_) syms.insert(sym);
  for (const auto& [sym, cost] : insert_) syms.insert(sym);
  return {syms.begin(), syms.end()};
}

std::optional<MetricViolation> CostModel::validate_metric(
    const std::vector<std::string>& alphabet) const {
  // point set: gap, two representative fresh classes, then symbols
  struct Point {
    enum { Gap, Fresh, Ordinary } kind;
    EffLabel eff;
    std::string name;
  };
  std::vector<Point> pts;
  pts.push_back({Point::Gap, {}, "<gap>"});
  pts.push_back({Point::Fresh, EffLabel{"", 0}, "<fresh#1>"});
  pts.push_back({Point::Fresh, EffLabel{"", 1}, "<fresh#2>"});
  std::set<std::string> syms(alphabet.begin(), alphabet.end());
  for (const std::string& s : declared_symbols()) syms.insert(s);
  for (const std::string& s : syms)
    pts.push_back({Point::Ordinary, EffLabel{s, -1}, s});

  auto cost = [&](const Point& a, const Point& b) -> double {
    if (a.kind == Point::Gap && b.kind == Point::Gap) return 0.0;
    if (a.kind == Point::Gap) return gamma_insert(b.eff);
    if (b.kind == Point::Gap) return gamma_delete(a.eff);
    return gamma(a.eff, b.eff);
  };

  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cost(pts[i], pts[i]) != 0.0)
      return MetricViolation{"identity", pts[i].name, pts[i].name, ""};
    for (std::size_t j = 0; j < n; ++j) {
      double cij = cost(pts[i], pts[j]);
      if (cij < 0.0)
        return MetricViolation{"nonnegativity", pts[i].name, pts[j].name, ""};
      if (cij != cost(pts[j], pts[i]))
        return MetricViolation{"symmetry", pts[i].name, pts[j].name, ""};
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (cost(pts[i], pts[k]) > cost(pts[i], pts[j]) + cost(pts[j], pts[k]))
          return MetricViolation{"triangle", pts[i].name, pts[j].name,
                                 pts[k].name};
  return std::nullopt;
}

CostModel parse_cost_file(const std::string& text) {
  CostModel model;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("cost file line " + std::to_string(line_no) +
                                ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;

    auto read_cost = [&]() {
      double c;
      if (!(ls >> c)) fail("expected a cost value");
      return c;
    };
    auto read_symbol = [&]() {
      std::string s;
      if (!(ls >> s) || !valid_symbol(s)) fail("expected a label symbol");
      return s;
    };

    if (keyword == "relabel") {
      std::string a = read_symbol(), b = read_symbol();
      double c = read_cost();
      if (a == b) fail("relabel cost for equal labels is fixed at 0");
      model.set_relabel(a, b, c);
    } else if (keyword == "delete") {
      std::string a = read_symbol();
      model.set_delete(a, read_cost());
    } else if (keyword == "insert") {
      std::string a = read_symbol();
      model.set_insert(a, read_cost());
    } else if (keyword == "default") {
      model.set_default(read_cost());
    } else if (keyword == "varpair") {
      model.set_var_pair(read_cost());
    } else if (keyword == "varconst") {
      model.set_var_const(read_cost());
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing content '" + extra + "'");
  }
  return model;
}

}  // namespace vted
