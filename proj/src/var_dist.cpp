#include "vted/var_dist.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

#include "vted/ted_ordered.hpp"

namespace vted {

std::uint64_t substitution_count(std::size_t m1, std::size_t m2) {
  std::size_t small = std::min(m1, m2), big = std::max(m1, m2);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < small; ++i) {
    std::uint64_t factor = big - i;
    if (count > std::numeric_limits<std::uint64_t>::max() / factor)
      return std::numeric_limits<std::uint64_t>::max();
    count *= factor;
  }
  return count;
}

namespace {

// Lexicographic enumeration of total injective maps from {0..m-1} into
// {0..n-1}, m <= n.
class InjectiveCursor {
 public:
  InjectiveCursor(int m, int n) : m_(m), n_(n), img_(m) {
    for (int i = 0; i < m_; ++i) img_[i] = i;
  }

  const std::vector<int>& images() const { return img_; }

  bool advance() {
    for (int p = m_ - 1; p >= 0; --p) {
      std::vector<char> used(n_, 0);
      for (int q = 0; q < p; ++q) used[img_[q]] = 1;
      int next = -1;
      for (int v = img_[p] + 1; v < n_; ++v)
        if (!used[v]) {
          next = v;
          break;
        }
      if (next < 0) continue;
      img_[p] = next;
      used[next] = 1;
      int fill = 0;
      for (int q = p + 1; q < m_; ++q) {
        while (used[fill]) ++fill;
        img_[q] = fill;
        used[fill] = 1;
      }
      return true;
    }
    return false;
  }

 private:
  int m_, n_;
  std::vector<int> img_;
};

struct VarSets {
  std::vector<std::string> small, big;
  bool swapped = false;  // true when t2's variables are the smaller side
};

VarSets split_vars(const Tree& t1, const Tree& t2) {
  std::set<std::string> v1 = variables_of(t1), v2 = variables_of(t2);
  VarSets vs;
  vs.swapped = v1.size() > v2.size();
  const auto& small = vs.swapped ? v2 : v1;
  const auto& big = vs.swapped ? v1 : v2;
  vs.small.assign(small.begin(), small.end());
  vs.big.assign(big.begin(), big.end());
  return vs;
}

Substitution make_substitution(const VarSets& vs, const std::vector<int>& img) {
  Substitution theta;
  theta.matches.reserve(vs.small.size());
  for (std::size_t i = 0; i < vs.small.size(); ++i) {
    if (vs.swapped)
      theta.matches.emplace_back(vs.big[img[i]], vs.small[i]);
    else
      theta.matches.emplace_back(vs.small[i], vs.big[img[i]]);
  }
  std::sort(theta.matches.begin(), theta.matches.end());
  return theta;
}

}  // namespace

std::vector<Substitution> enumerate_substitutions(
    const std::set<std::string>& vars1, const std::set<std::string>& vars2) {
  std::uint64_t count = substitution_count(vars1.size(), vars2.size());
  if (count > (std::uint64_t{1} << 20))
    throw std::invalid_argument(
        "too many substitutions to materialize; use dist_with_vars");

  VarSets vs;
  vs.swapped = vars1.size() > vars2.size();
  const auto& small = vs.swapped ? vars2 : vars1;
  const auto& big = vs.swapped ? vars1 : vars2;
  vs.small.assign(small.begin(), small.end());
  vs.big.assign(big.begin(), big.end());

  std::vector<Substitution> all;
  all.reserve(count);
  InjectiveCursor cursor(static_cast<int>(vs.small.size()),
                         static_cast<int>(vs.big.size()));
  do {
    all.push_back(make_substitution(vs, cursor.images()));
  } while (cursor.advance());
  return all;
}

LabeledTree apply_substitution(const Tree& t, const Substitution& theta,
                               Side side) {
  // class ids shared by both sides: sorted match i -> class i
  std::vector<std::pair<std::string, std::string>> matches = theta.matches;
  std::sort(matches.begin(), matches.end());
  {
    std::set<std::string> left, right;
    for (const auto& [x, y] : matches)
      if (!left.insert(x).second || !right.insert(y).second)
        throw std::invalid_argument("substitution pairing is not injective");
  }
  std::map<std::string, int> cls;
  for (std::size_t i = 0; i < matches.size(); ++i)
    cls[side == Side::Left ? matches[i].first : matches[i].second] =
        static_cast<int>(i);

  // unmatched variables get unique classes; left and right unmatched ranges
  // are interleaved (even/odd) so they can never collide
  int base = static_cast<int>(matches.size());
  int step = 0;
  for (const std::string& v : variables_of(t))
    if (!cls.count(v)) {
      cls[v] = base + 2 * step + (side == Side::Left ? 0 : 1);
      ++step;
    }

  LabeledTree lt;
  lt.tree = &t;
  lt.labels.reserve(t.size());
  for (int v = 0; v < t.size(); ++v) {
    const Label& l = t.label(v);
    if (l.is_variable())
      lt.labels.push_back(EffLabel{"", cls.at(l.symbol)});
    else
      lt.labels.push_back(EffLabel{l.symbol, -1});
  }
  return lt;
}

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
  Substitution theta;
  EditMapping mapping;
  bool exact = true;

  bool better_than(const Candidate& other) const {
    if (value != other.value) return value < other.value;
    return index < other.index;
  }
};

struct SharedState {
  std::atomic<double> upper{std::numeric_limits<double>::infinity()};
  std::atomic<std::uint64_t> zero_index{
      std::numeric_limits<std::uint64_t>::max()};
  std::atomic<bool> stopped{false};  // budget ran dry mid-enumeration

  void offer_upper(double v) {
    double cur = upper.load(std::memory_order_relaxed);
    while (v < cur && !upper.compare_exchange_weak(cur, v,
                                                   std::memory_order_relaxed)) {
    }
  }
  void offer_zero(std::uint64_t k) {
    std::uint64_t cur = zero_index.load(std::memory_order_relaxed);
    while (k < cur && !zero_index.compare_exchange_weak(
                          cur, k, std::memory_order_relaxed)) {
    }
  }
};

// Evaluates substitution k; updates the worker-local best candidate.
void evaluate_substitution(const Tree& t1, const Tree& t2, const CostModel& c,
                           TreeOrder mode, const Substitution& theta,
                           std::uint64_t k, BudgetState& budget,
                           SharedState& shared, Candidate& local_best,
                           bool& all_exact) {
  LabeledTree la = apply_substitution(t1, theta, Side::Left);
  LabeledTree lb = apply_substitution(t2, theta, Side::Right);

  // proven worse than the incumbent: skip (strictly worse, so no tie lost)
  double lb0 = unordered_lower_bound(la, lb, c);
  if (lb0 > shared.upper.load(std::memory_order_relaxed) &&
      lb0 > local_best.value)
    return;

  TedResult warm = ted_ordered(la, lb, c);
  Candidate cand;
  cand.index = k;
  cand.theta = theta;

  if (mode == TreeOrder::Ordered) {
    cand.value = warm.distance;
    cand.mapping = warm.mapping;
    cand.exact = true;
  } else {
    UnorderedOptions opts;
    opts.initial_upper = warm.distance;
    opts.initial_witness = &warm.mapping;
    opts.budget = &budget;
    opts.shared_upper = &shared.upper;
    TedResult r = ted_unordered(la, lb, c, opts);
    cand.value = r.distance;
    cand.mapping = r.mapping;
    cand.exact = r.optimal;
    if (!r.optimal) all_exact = false;
  }

  shared.offer_upper(cand.value);
  if (cand.value == 0.0 && cand.exact) shared.offer_zero(k);
  if (cand.better_than(local_best)) local_best = cand;
}

}  // namespace

VarDistResult dist_with_vars(const Tree& t1, const Tree& t2,
                             const CostModel& c, const VarDistOptions& opts) {
  VarSets vs = split_vars(t1, t2);
  int m = static_cast<int>(vs.small.size());
  int n = static_cast<int>(vs.big.size());

  BudgetState own_budget(opts.limits);
  BudgetState& budget = opts.budget ? *opts.budget : own_budget;
  SharedState shared;

  int jobs = std::max(1, opts.jobs);
  std::vector<Candidate> bests(jobs);
  std::vector<char> exact_flags(jobs, 1);
  std::atomic<std::uint64_t> enumerated{0};

  auto worker = [&](int wid) {
    InjectiveCursor cursor(m, n);
    std::uint64_t k = 0;
    // position the cursor on this worker's first index
    for (int s = 0; s < wid; ++s, ++k)
      if (!cursor.advance() && m > 0) return;
    if (wid > 0 && m == 0) return;  // single empty substitution
    bool all_exact = true;
    while (true) {
      if (!budget.check_deadline()) {
        shared.stopped.store(true, std::memory_order_relaxed);
        break;
      }
      if (k > shared.zero_index.load(std::memory_order_relaxed)) break;
      Substitution theta = make_substitution(vs, cursor.images());
      evaluate_substitution(t1, t2, c, opts.mode, theta, k, budget, shared,
                            bests[wid], all_exact);
      enumerated.fetch_add(1, std::memory_order_relaxed);
      bool have_next = true;
      for (int s = 0; s < jobs; ++s)
        if (!cursor.advance()) {
          have_next = false;
          break;
        }
      k += jobs;
      if (!have_next || m == 0) break;
    }
    exact_flags[wid] = all_exact ? 1 : 0;
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& th : threads) th.join();
  }

  Candidate best;
  bool all_exact = true;
  for (int w = 0; w < jobs; ++w) {
    if (bests[w].better_than(best)) best = bests[w];
    all_exact = all_exact && exact_flags[w];
  }

  if (best.value == std::numeric_limits<double>::infinity()) {
    // budget ran dry before any substitution was evaluated; the empty
    // mapping (delete all of t1, insert all of t2) is always a valid bound
    LabeledTree la = apply_substitution(t1, Substitution{}, Side::Left);
    LabeledTree lb = apply_substitution(t2, Substitution{}, Side::Right);
    best.value = 0.0;
    for (const EffLabel& l : la.labels) best.value += c.gamma_delete(l);
    for (const EffLabel& l : lb.labels) best.value += c.gamma_insert(l);
    best.exact = false;
    all_exact = false;
  }

  VarDistResult result;
  result.distance = best.value;
  result.theta = best.theta;
  result.mapping = best.mapping;
  result.substitutions_enumerated = enumerated.load();
  bool stopped = shared.stopped.load(std::memory_order_relaxed);
  result.optimal = all_exact && !stopped;
  // zero cannot be improved on, so an early zero stop is still optimal
  if (best.value == 0.0 && best.exact) result.optimal = true;
  return result;
}

ThresholdAnswer dist_at_most(const Tree& t1, const Tree& t2, double d,
                             const CostModel& c, const VarDistOptions& opts) {
  VarSets vs = split_vars(t1, t2);
  int m = static_cast<int>(vs.small.size());
  int n = static_cast<int>(vs.big.size());

  BudgetState own_budget(opts.limits);
  BudgetState& budget = opts.budget ? *opts.budget : own_budget;

  InjectiveCursor cursor(m, n);
  bool unknown = false;
  bool more = true;
  while (more) {
    if (!budget.check_deadline()) return ThresholdAnswer::Unknown;
    Substitution theta = make_substitution(vs, cursor.images());
    LabeledTree la = apply_substitution(t1, theta, Side::Left);
    LabeledTree lb = apply_substitution(t2, theta, Side::Right);
    if (unordered_lower_bound(la, lb, c) <= d) {
      TedResult warm = ted_ordered(la, lb, c);
      if (warm.distance <= d) return ThresholdAnswer::Yes;
      if (opts.mode == TreeOrder::Unordered) {
        UnorderedOptions uo;
        uo.initial_upper = d;
        uo.budget = &budget;
        TedResult r = ted_unordered(la, lb, c, uo);
        if (r.found_witness && r.distance <= d) return ThresholdAnswer::Yes;
        if (!r.optimal) unknown = true;
      }
    }
    more = cursor.advance() && m > 0;
    if (m == 0) more = false;
  }
  return unknown ? ThresholdAnswer::Unknown : ThresholdAnswer::No;
}

}  // namespace vted
