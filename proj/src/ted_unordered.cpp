#include "vted/ted_unordered.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace vted {

namespace {

// Interns the effective labels of both trees into dense ids so histogram
// bounds and relabel lookups stay cheap inside the search.
struct Interned {
  int n_labels = 0;
  std::vector<int> a, b;           // label id per preorder node
  std::vector<double> rel;         // n_labels x n_labels
  std::vector<double> del_node;    // per t1 node
  std::vector<double> ins_node;    // per t2 node
  double min_rel_nonequal = std::numeric_limits<double>::infinity();
  double min_del = std::numeric_limits<double>::infinity();
  double min_ins = std::numeric_limits<double>::infinity();

  struct EffLess {
    bool operator()(const EffLabel& x, const EffLabel& y) const {
      if (x.fresh_class != y.fresh_class) return x.fresh_class < y.fresh_class;
      return x.symbol < y.symbol;
    }
  };

  Interned(const LabeledTree& t1, const LabeledTree& t2, const CostModel& c) {
    std::map<EffLabel, int, EffLess> ids;
    auto intern = [&](const EffLabel& l) {
      auto [it, inserted] = ids.emplace(l, n_labels);
      if (inserted) ++n_labels;
      return it->second;
    };
    a.reserve(t1.size());
    for (const EffLabel& l : t1.labels) a.push_back(intern(l));
    b.reserve(t2.size());
    for (const EffLabel& l : t2.labels) b.push_back(intern(l));

    std::vector<const EffLabel*> by_id(n_labels);
    for (const auto& [l, id] : ids) by_id[id] = &l;
    rel.assign(static_cast<std::size_t>(n_labels) * n_labels, 0.0);
    for (int i = 0; i < n_labels; ++i)
      for (int j = 0; j < n_labels; ++j) {
        double g = c.gamma(*by_id[i], *by_id[j]);
        rel[static_cast<std::size_t>(i) * n_labels + j] = g;
        if (i != j) min_rel_nonequal = std::min(min_rel_nonequal, g);
      }
    del_node.reserve(t1.size());
    for (const EffLabel& l : t1.labels) {
      del_node.push_back(c.gamma_delete(l));
      min_del = std::min(min_del, del_node.back());
    }
    ins_node.reserve(t2.size());
    for (const EffLabel& l : t2.labels) {
      ins_node.push_back(c.gamma_insert(l));
      min_ins = std::min(min_ins, ins_node.back());
    }
    // a single distinct label on either side leaves no non-equal pair
    if (n_labels < 2) min_rel_nonequal = std::min(min_del, min_ins);
  }

  double relabel(int i, int j) const {
    return rel[static_cast<std::size_t>(i) * n_labels + j];
  }
};

class Search {
 public:
  Search(const LabeledTree& t1, const LabeledTree& t2, const CostModel& c,
         const UnorderedOptions& opts, BudgetState& budget)
      : a_(*t1.tree),
        b_(*t2.tree),
        n1_(t1.size()),
        n2_(t2.size()),
        in_(t1, t2, c),
        opts_(opts),
        budget_(budget) {
    // per-position suffix histograms of t1 labels
    suf_.assign(static_cast<std::size_t>(n1_ + 1) * in_.n_labels, 0);
    for (int i = n1_ - 1; i >= 0; --i) {
      for (int l = 0; l < in_.n_labels; ++l)
        suf(i, l) = suf(i + 1, l);
      ++suf(i, in_.a[i]);
    }
    cnt2_.assign(in_.n_labels, 0);
    for (int w = 0; w < n2_; ++w) ++cnt2_[in_.b[w]];
    used_.assign(n2_, 0);
    unused_count_ = n2_;
    for (int w = 0; w < n2_; ++w) ins_unused_sum_ += in_.ins_node[w];
  }

  TedResult run() {
    best_value_ = std::numeric_limits<double>::infinity();
    completed_ = dfs(0);

    TedResult result;
    result.expansions = expansions_;
    if (best_value_ < std::numeric_limits<double>::infinity()) {
      result.distance = best_value_;
      result.mapping = best_mapping_;
      result.found_witness = true;
      result.optimal = completed_;
    } else {
      // nothing at or below the initial upper bound was found
      result.distance = opts_.initial_upper;
      if (opts_.initial_witness) result.mapping = *opts_.initial_witness;
      result.found_witness = opts_.initial_witness != nullptr;
      result.optimal = completed_;
    }
    result.mapping.sort_canonical();
    return result;
  }

 private:
  const Tree& a_;
  const Tree& b_;
  int n1_, n2_;
  Interned in_;
  const UnorderedOptions& opts_;
  BudgetState& budget_;

  std::vector<int> suf_;
  std::vector<int> cnt2_;
  std::vector<char> used_;
  int unused_count_ = 0;
  double ins_unused_sum_ = 0.0;
  double acc_ = 0.0;
  std::vector<std::pair<int, int>> pairs_;

  double best_value_ = std::numeric_limits<double>::infinity();
  EditMapping best_mapping_;
  bool completed_ = true;
  std::uint64_t expansions_ = 0;

  int& suf(int i, int l) {
    return suf_[static_cast<std::size_t>(i) * in_.n_labels + l];
  }

  double external_upper() const {
    double u = opts_.initial_upper;
    if (opts_.shared_upper)
      u = std::min(u, opts_.shared_upper->load(std::memory_order_relaxed));
    return u;
  }

  // Admissible bound on completing the suffix [i, n1) against the unused
  // t2 nodes: histogram matching on each side plus the size-difference term.
  double completion_bound(int i) {
    int rem_a = n1_ - i;
    int rem_b = unused_count_;
    int equal = 0;
    for (int l = 0; l < in_.n_labels; ++l)
      equal += std::min(suf(i, l), cnt2_[l]);
    double cheapest_a = std::min(in_.min_rel_nonequal, in_.min_del);
    double cheapest_b = std::min(in_.min_rel_nonequal, in_.min_ins);
    double bound = std::max((rem_a - equal) * cheapest_a,
                            (rem_b - equal) * cheapest_b);
    double size_bound = rem_a > rem_b ? (rem_a - rem_b) * in_.min_del
                                      : (rem_b - rem_a) * in_.min_ins;
    return std::max({bound, size_bound, 0.0});
  }

  bool compatible(int v, int w) const {
    for (const auto& [pv, pw] : pairs_) {
      if (a_.is_ancestor(pv, v) != b_.is_ancestor(pw, w)) return false;
      // v is never an ancestor of an earlier preorder node, so its image
      // may not be an ancestor of an earlier image either
      if (b_.is_ancestor(w, pw)) return false;
    }
    return true;
  }

  void record_solution() {
    double total = acc_ + ins_unused_sum_;
    if (total < best_value_) {
      best_value_ = total;
      best_mapping_.pairs = pairs_;
      if (opts_.shared_upper) {
        double cur = opts_.shared_upper->load(std::memory_order_relaxed);
        while (total < cur && !opts_.shared_upper->compare_exchange_weak(
                                  cur, total, std::memory_order_relaxed)) {
        }
      }
    }
  }

  // Returns false when the budget ran out (result may be suboptimal).
  bool dfs(int i) {
    ++expansions_;
    if (!budget_.tick()) return false;
    if (i == n1_) {
      record_solution();
      return true;
    }
    double bound = acc_ + completion_bound(i);
    // strict pruning against external bounds keeps equal-cost optima
    // reachable; the local best needs strictly better only
    if (bound > external_upper() || bound >= best_value_) return true;

    for (int w = 0; w < n2_; ++w) {
      if (used_[w] || !compatible(i, w)) continue;
      used_[w] = 1;
      --cnt2_[in_.b[w]];
      --unused_count_;
      ins_unused_sum_ -= in_.ins_node[w];
      pairs_.emplace_back(i, w);
      acc_ += in_.relabel(in_.a[i], in_.b[w]);
      bool ok = dfs(i + 1);
      acc_ -= in_.relabel(in_.a[i], in_.b[w]);
      pairs_.pop_back();
      ins_unused_sum_ += in_.ins_node[w];
      ++unused_count_;
      ++cnt2_[in_.b[w]];
      used_[w] = 0;
      if (!ok) return false;
      if (best_value_ == 0.0) return true;  // cannot be beaten
    }

    acc_ += in_.del_node[i];
    bool ok = dfs(i + 1);
    acc_ -= in_.del_node[i];
    return ok;
  }
};

}  // namespace

double unordered_lower_bound(const LabeledTree& t1, const LabeledTree& t2,
                             const CostModel& c) {
  Interned in(t1, t2, c);
  int n1 = t1.size(), n2 = t2.size();
  std::vector<int> c1(in.n_labels, 0), c2(in.n_labels, 0);
  for (int id : in.a) ++c1[id];
  for (int id : in.b) ++c2[id];
  int equal = 0;
  for (int l = 0; l < in.n_labels; ++l) equal += std::min(c1[l], c2[l]);
  double cheapest_a = std::min(in.min_rel_nonequal, in.min_del);
  double cheapest_b = std::min(in.min_rel_nonequal, in.min_ins);
  double bound =
      std::max((n1 - equal) * cheapest_a, (n2 - equal) * cheapest_b);
  double size_bound =
      n1 > n2 ? (n1 - n2) * in.min_del : (n2 - n1) * in.min_ins;
  return std::max({bound, size_bound, 0.0});
}

double unordered_lower_bound(const Tree& t1, const Tree& t2,
                             const CostModel& c) {
  LabeledTree a = plain_labels(t1), b = plain_labels(t2);
  return unordered_lower_bound(a, b, c);
}

TedResult ted_unordered(const LabeledTree& t1, const LabeledTree& t2,
                        const CostModel& c, const UnorderedOptions& opts) {
  if (opts.budget) {
    Search search(t1, t2, c, opts, *opts.budget);
    return search.run();
  }
  BudgetState budget(opts.limits);
  Search search(t1, t2, c, opts, budget);
  return search.run();
}

TedResult ted_unordered(const Tree& t1, const Tree& t2, const CostModel& c,
                        const SearchLimits& limits) {
  LabeledTree a = plain_labels(t1), b = plain_labels(t2);
  TedResult warm = ted_ordered(a, b, c);
  UnorderedOptions opts;
  opts.initial_upper = warm.distance;
  opts.initial_witness = &warm.mapping;
  opts.limits = limits;
  return ted_unordered(a, b, c, opts);
}

}  // namespace vted
