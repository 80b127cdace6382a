#include "vted/tree.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace vted {

namespace {
// Hard cap against runaway construction; parsers enforce their own,
// configurable limit.
constexpr std::size_t kHardNodeCap = std::size_t{1} << 22;
}  // namespace

bool valid_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch == '(' || ch == ')' || ch == ',' || ch == ';') return false;
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' ||
        ch == '\v')
      return false;
  }
  return true;
}

Label::Label(LabelKind k, std::string s) : kind(k), symbol(std::move(s)) {
  if (!valid_symbol(symbol))
    throw std::invalid_argument("invalid label symbol: '" + symbol + "'");
}

Label constant(std::string symbol) {
  return Label(LabelKind::Constant, std::move(symbol));
}

Label variable(std::string symbol) {
  return Label(LabelKind::Variable, std::move(symbol));
}

Tree Tree::leaf(Label l) {
  Tree t;
  Node node;
  node.label = std::move(l);
  t.nodes_.push_back(std::move(node));
  t.sizes_.push_back(1);
  return t;
}

Tree Tree::branch(Label l, std::vector<Tree> subtrees) {
  if (l.kind == LabelKind::Variable && !subtrees.empty())
    throw std::invalid_argument("variable '" + l.symbol +
                                "' used at a non-leaf node");
  if (subtrees.empty()) return leaf(std::move(l));

  std::size_t total = 1;
  for (const Tree& s : subtrees) total += s.nodes_.size();
  if (total > kHardNodeCap) throw std::invalid_argument("tree too large");

  Tree t;
  t.nodes_.reserve(total);
  Node root;
  root.label = std::move(l);
  t.nodes_.push_back(std::move(root));
  for (const Tree& s : subtrees) t.append_subtree(s, 0);
  t.compute_sizes();
  return t;
}

void Tree::append_subtree(const Tree& s, int parent) {
  int offset = static_cast<int>(nodes_.size());
  nodes_[parent].children.push_back(offset);
  for (int v = 0; v < s.size(); ++v) {
    Node n = s.nodes_[v];
    n.parent = (v == 0) ? parent : n.parent + offset;
    for (int& c : n.children) c += offset;
    nodes_.push_back(std::move(n));
  }
}

void Tree::compute_sizes() {
  int n = size();
  sizes_.assign(n, 1);
  // children always have larger preorder ids, so one backward pass suffices
  for (int v = n - 1; v > 0; --v) sizes_[nodes_[v].parent] += sizes_[v];
}

int Tree::max_outdegree() const {
  int best = 0;
  for (const Node& n : nodes_)
    best = std::max(best, static_cast<int>(n.children.size()));
  return best;
}

std::set<std::string> variables_of(const Tree& t) {
  std::set<std::string> vars;
  for (int v = 0; v < t.size(); ++v)
    if (t.label(v).is_variable()) vars.insert(t.label(v).symbol);
  return vars;
}

bool has_variables(const Tree& t) {
  for (int v = 0; v < t.size(); ++v)
    if (t.label(v).is_variable()) return true;
  return false;
}

namespace {
void dump_rec(const Tree& t, int v, std::string& out) {
  out += t.label(v).symbol;
  const auto& children = t.node(v).children;
  if (children.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ',';
    dump_rec(t, children[i], out);
  }
  out += ')';
}
}  // namespace

std::string dump_tree(const Tree& t) {
  std::string out;
  dump_rec(t, 0, out);
  return out;
}

std::string EulerString::to_string() const {
  std::string out;
  for (const EulerToken& tok : tokens) {
    out += tok.open ? '(' : ')';
    out += tok.label;
  }
  return out;
}

EulerString euler_string(const Tree& t) {
  EulerString es;
  es.tokens.reserve(2 * t.size());
  std::map<std::string, int> var_ids;

  // explicit stack; entries are (node, next child index)
  std::vector<std::pair<int, std::size_t>> stack;
  auto canonical = [&](int v) -> std::string {
    const Label& l = t.label(v);
    if (!l.is_variable()) return l.symbol;
    auto [it, inserted] =
        var_ids.emplace(l.symbol, static_cast<int>(var_ids.size()) + 1);
    (void)inserted;
    return "$" + std::to_string(it->second);
  };

  // canonical label of v once its variable id is assigned
  auto resolved = [&](int v) -> std::string {
    const Label& l = t.label(v);
    if (!l.is_variable()) return l.symbol;
    return "$" + std::to_string(var_ids.at(l.symbol));
  };

  stack.emplace_back(0, 0);
  es.tokens.push_back({true, canonical(0)});
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& children = t.node(v).children;
    if (next < children.size()) {
      int c = children[next++];
      es.tokens.push_back({true, canonical(c)});
      stack.emplace_back(c, 0);
    } else {
      es.tokens.push_back({false, resolved(v)});
      stack.pop_back();
    }
  }
  return es;
}

}  // namespace vted
