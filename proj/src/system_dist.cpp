#include "vted/system_dist.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "vted/ted_ordered.hpp"
#include "vted/ted_unordered.hpp"

namespace vted {

std::vector<std::string> OdeSystem::lhs_symbols() const {
  std::vector<std::string> out;
  out.reserve(equations.size());
  for (const auto& [lhs, rhs] : equations) out.push_back(lhs);
  return out;
}

void OdeSystem::validate() const {
  if (equations.empty()) throw std::invalid_argument("empty system");
  std::set<std::string> lhs;
  for (const auto& [name, rhs] : equations)
    if (!lhs.insert(name).second)
      throw std::invalid_argument("duplicate lhs identifier '" + name + "'");
  for (const auto& [name, rhs] : equations)
    for (const std::string& v : variables_of(rhs))
      if (!lhs.count(v))
        throw std::invalid_argument("rhs variable '" + v +
                                    "' does not appear on any lhs");
}

double delete_cost(const LabeledTree& t, const CostModel& c) {
  double total = 0.0;
  for (const EffLabel& l : t.labels) total += c.gamma_delete(l);
  return total;
}

double delete_cost(const Tree& t, const CostModel& c) {
  return delete_cost(plain_labels(t), c);
}

namespace {

// Every variable as its own fresh constant (the empty substitution).
LabeledTree own_fresh_labels(const Tree& t, Side side) {
  return apply_substitution(t, Substitution{}, side);
}

// Lexicographic enumeration of total injective maps, as in var_dist.
class PairingCursor {
 public:
  PairingCursor(int m, int n) : m_(m), n_(n), img_(m) {
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

SystemDistResult transpose_result(SystemDistResult r) {
  std::vector<std::pair<std::pair<int, int>, double>> rows;
  rows.reserve(r.pairing.size());
  for (std::size_t k = 0; k < r.pairing.size(); ++k)
    rows.push_back({{r.pairing[k].second, r.pairing[k].first}, r.per_pair[k]});
  std::sort(rows.begin(), rows.end());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    r.pairing[k] = rows[k].first;
    r.per_pair[k] = rows[k].second;
  }
  r.swapped = true;
  return r;
}

}  // namespace

double hungarian_matching(const std::vector<std::vector<double>>& w,
                          std::vector<int>& row_to_col) {
  int n = static_cast<int>(w.size());
  for (const auto& row : w) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matching requires a square matrix");
    for (double x : row)
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument(
            "matching requires finite non-negative weights");
  }
  row_to_col.assign(n, -1);
  if (n == 0) return 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  // potentials over rows/cols; p[j] = row matched to column j (1-based)
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = w[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  double total = 0.0;
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) {
      row_to_col[p[j] - 1] = j - 1;
      total += w[p[j] - 1][j - 1];
    }
  return total;
}

SystemDistResult system_dist(const OdeSystem& sx, const OdeSystem& sy,
                             const CostModel& c, const SystemOptions& opts) {
  sx.validate();
  sy.validate();
  if (sx.equations.size() > sy.equations.size())
    return transpose_result(system_dist(sy, sx, c, opts));

  int m1 = static_cast<int>(sx.equations.size());
  int m2 = static_cast<int>(sy.equations.size());
  std::vector<std::string> xs = sx.lhs_symbols(), ys = sy.lhs_symbols();

  BudgetState budget(opts.limits);

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::vector<int> images;
    std::vector<double> per_pair;
    std::vector<double> deletion_costs;
    bool exact = true;
  } best;
  bool stopped = false;

  PairingCursor cursor(m1, m2);
  bool more = true;
  while (more) {
    if (!budget.check_deadline()) {
      stopped = true;
      break;
    }
    const std::vector<int>& img = cursor.images();

    Substitution global;
    global.matches.reserve(m1);
    for (int i = 0; i < m1; ++i) global.matches.emplace_back(xs[i], ys[img[i]]);
    std::sort(global.matches.begin(), global.matches.end());

    double total = 0.0;
    std::vector<double> per_pair;
    per_pair.reserve(m1);
    bool exact = true;
    bool abandoned = false;
    for (int i = 0; i < m1; ++i) {
      LabeledTree la =
          apply_substitution(sx.equations[i].second, global, Side::Left);
      LabeledTree lb =
          apply_substitution(sy.equations[img[i]].second, global, Side::Right);
      TedResult warm = ted_ordered(la, lb, c);
      UnorderedOptions uo;
      uo.initial_upper = warm.distance;
      uo.initial_witness = &warm.mapping;
      uo.budget = &budget;
      TedResult r = ted_unordered(la, lb, c, uo);
      if (!r.optimal) exact = false;
      total += r.distance;
      per_pair.push_back(r.distance);
      if (total > best.value) {  // cannot win or tie anymore
        abandoned = true;
        break;
      }
    }
    if (!abandoned) {
      std::vector<char> matched(m2, 0);
      for (int i = 0; i < m1; ++i) matched[img[i]] = 1;
      std::vector<double> deletion_costs;
      for (int j = 0; j < m2; ++j)
        if (!matched[j]) {
          double dc = delete_cost(
              apply_substitution(sy.equations[j].second, global, Side::Right),
              c);
          deletion_costs.push_back(dc);
          total += dc;
        }
      if (total < best.value) {
        best.value = total;
        best.images = img;
        best.per_pair = std::move(per_pair);
        best.deletion_costs = std::move(deletion_costs);
        best.exact = exact;
      }
      if (best.value == 0.0 && best.exact) break;
    }
    more = cursor.advance();
  }

  if (best.images.empty()) {
    // budget ran dry before the first pairing finished: fall back to the
    // identity-prefix pairing costed by delete+insert, a valid upper bound
    Substitution global;
    for (int i = 0; i < m1; ++i) global.matches.emplace_back(xs[i], ys[i]);
    std::sort(global.matches.begin(), global.matches.end());
    best.value = 0.0;
    best.exact = false;
    best.images.resize(m1);
    for (int i = 0; i < m1; ++i) {
      best.images[i] = i;
      double ub = delete_cost(apply_substitution(sx.equations[i].second,
                                                 global, Side::Left),
                              c) +
                  delete_cost(apply_substitution(sy.equations[i].second,
                                                 global, Side::Right),
                              c);
      best.per_pair.push_back(ub);
      best.value += ub;
    }
    for (int j = m1; j < m2; ++j) {
      double dc = delete_cost(
          apply_substitution(sy.equations[j].second, global, Side::Right), c);
      best.deletion_costs.push_back(dc);
      best.value += dc;
    }
  }

  SystemDistResult result;
  result.distance = best.value;
  for (int i = 0; i < m1; ++i) result.pairing.emplace_back(i, best.images[i]);
  std::vector<char> matched(m2, 0);
  for (int j : best.images) matched[j] = 1;
  for (int j = 0; j < m2; ++j)
    if (!matched[j]) result.deleted.push_back(j);
  result.per_pair = best.per_pair;
  result.deletion_costs = best.deletion_costs;
  result.optimal = best.exact && !stopped;
  if (result.distance == 0.0 && best.exact) result.optimal = true;
  return result;
}

SystemDistResult system_pdist(const OdeSystem& sx, const OdeSystem& sy,
                              const CostModel& c, const SystemOptions& opts) {
  sx.validate();
  sy.validate();
  if (sx.equations.size() > sy.equations.size())
    return transpose_result(system_pdist(sy, sx, c, opts));

  int m1 = static_cast<int>(sx.equations.size());
  int m2 = static_cast<int>(sy.equations.size());

  // real rows: distance with variables; dummy rows: deletion cost
  std::vector<std::vector<double>> w(m2, std::vector<double>(m2, 0.0));
  std::vector<char> cell_optimal(static_cast<std::size_t>(m1) * m2, 1);
  std::vector<double> del_col(m2, 0.0);
  for (int j = 0; j < m2; ++j)
    del_col[j] = delete_cost(
        own_fresh_labels(sy.equations[j].second, Side::Right), c);
  for (int i = m1; i < m2; ++i)
    for (int j = 0; j < m2; ++j) w[i][j] = del_col[j];

  // the expansion budget is split evenly across real cells; the wall-clock
  // deadline is one global clock over the whole matrix
  std::uint64_t cells = static_cast<std::uint64_t>(std::max(1, m1 * m2));
  SearchLimits cell_limits = opts.limits;
  cell_limits.max_expansions =
      std::max<std::uint64_t>(1, opts.limits.max_expansions / cells);
  auto deadline = BudgetState::deadline_from_now(opts.limits.max_seconds);

  int jobs = std::max(1, opts.jobs);
  std::atomic<int> next_cell{0};
  auto cell_worker = [&]() {
    while (true) {
      int idx = next_cell.fetch_add(1, std::memory_order_relaxed);
      if (idx >= m1 * m2) break;
      int i = idx / m2, j = idx % m2;
      BudgetState cell_budget(cell_limits, deadline);
      VarDistOptions vo;
      vo.mode = TreeOrder::Unordered;
      vo.budget = &cell_budget;
      VarDistResult r = dist_with_vars(sx.equations[i].second,
                                       sy.equations[j].second, c, vo);
      w[i][j] = r.distance;
      cell_optimal[idx] = r.optimal ? 1 : 0;
    }
  };
  if (jobs == 1) {
    cell_worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int t = 0; t < jobs; ++t) threads.emplace_back(cell_worker);
    for (auto& th : threads) th.join();
  }

  std::vector<int> row_to_col;
  double total = hungarian_matching(w, row_to_col);

  SystemDistResult result;
  result.distance = total;
  result.optimal = true;
  for (int i = 0; i < m1; ++i) {
    result.pairing.emplace_back(i, row_to_col[i]);
    result.per_pair.push_back(w[i][row_to_col[i]]);
  }
  for (int i = m1; i < m2; ++i) result.deleted.push_back(row_to_col[i]);
  std::sort(result.deleted.begin(), result.deleted.end());
  for (int col : result.deleted) result.deletion_costs.push_back(del_col[col]);
  for (std::size_t k = 0; k < cell_optimal.size(); ++k)
    if (!cell_optimal[k]) result.optimal = false;
  return result;
}

}  // namespace vted
