#include "vted/ted_ordered.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace vted {

namespace {

// Postorder view of one side of the DP.
struct Side {
  const LabeledTree* lt = nullptr;
  int n = 0;
  std::vector<int> pre_of_post;  // preorder id per postorder index
  std::vector<int> lml;          // postorder index of leftmost leaf, per postorder index
  std::vector<int> keyroots;     // postorder indices, ascending

  explicit Side(const LabeledTree& t) : lt(&t), n(t.size()) {
    pre_of_post.reserve(n);
    std::vector<int> post_of_pre(n, -1);
    // iterative postorder
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& children = t.tree->node(v).children;
      if (next < children.size()) {
        stack.emplace_back(children[next++], 0);
      } else {
        post_of_pre[v] = static_cast<int>(pre_of_post.size());
        pre_of_post.push_back(v);
        stack.pop_back();
      }
    }
    lml.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      const auto& children = t.tree->node(pre_of_post[i]).children;
      lml[i] = children.empty() ? i : lml[post_of_pre[children.front()]];
    }
    // the topmost node over each leftmost-leaf chain is a keyroot
    std::vector<int> top(n, -1);
    for (int i = 0; i < n; ++i) top[lml[i]] = i;
    for (int i = 0; i < n; ++i)
      if (top[i] >= 0) keyroots.push_back(top[i]);
    std::sort(keyroots.begin(), keyroots.end());
  }

  const EffLabel& label(int post) const {
    return lt->labels[pre_of_post[post]];
  }
};

class ZhangShasha {
 public:
  ZhangShasha(const LabeledTree& t1, const LabeledTree& t2, const CostModel& c)
      : a_(t1), b_(t2), cost_(c) {
    if (static_cast<long long>(a_.n) * b_.n > 16'000'000)
      throw std::invalid_argument("trees too large for the exact ordered DP");
    del_.resize(a_.n);
    for (int i = 0; i < a_.n; ++i) del_[i] = c.gamma_delete(a_.label(i));
    ins_.resize(b_.n);
    for (int j = 0; j < b_.n; ++j) ins_[j] = c.gamma_insert(b_.label(j));
    rel_.assign(static_cast<std::size_t>(a_.n) * b_.n, -1.0);
    td_.assign(static_cast<std::size_t>(a_.n) * b_.n, 0.0);
  }

  TedResult run() {
    for (int k1 : a_.keyroots)
      for (int k2 : b_.keyroots) forest_pass(k1, k2, nullptr);

    TedResult result;
    result.distance = td(a_.n - 1, b_.n - 1);
    extract(a_.n - 1, b_.n - 1, result.mapping);
    result.mapping.sort_canonical();
    return result;
  }

 private:
  Side a_, b_;
  const CostModel& cost_;
  std::vector<double> del_, ins_, rel_, td_;

  double& td(int i, int j) { return td_[static_cast<std::size_t>(i) * b_.n + j]; }

  double rel(int i, int j) {
    double& r = rel_[static_cast<std::size_t>(i) * b_.n + j];
    if (r < 0.0) r = cost_.gamma(a_.label(i), b_.label(j));
    return r;
  }

  // Forest-distance DP over the spans rooted at (k1, k2). When `fd_out` is
  // given the matrix is kept for backtracing; otherwise subtree distances
  // are recorded into td_.
  void forest_pass(int k1, int k2, std::vector<std::vector<double>>* fd_out) {
    int li = a_.lml[k1], lj = b_.lml[k2];
    int m = k1 - li + 2, n = k2 - lj + 2;
    int ioff = li - 1, joff = lj - 1;
    std::vector<std::vector<double>> local;
    auto& fd = fd_out ? *fd_out : local;
    fd.assign(m, std::vector<double>(n, 0.0));
    for (int x = 1; x < m; ++x) fd[x][0] = fd[x - 1][0] + del_[x + ioff];
    for (int y = 1; y < n; ++y) fd[0][y] = fd[0][y - 1] + ins_[y + joff];
    for (int x = 1; x < m; ++x) {
      int i = x + ioff;
      for (int y = 1; y < n; ++y) {
        int j = y + joff;
        double d = fd[x - 1][y] + del_[i];
        double s = fd[x][y - 1] + ins_[j];
        if (a_.lml[i] == li && b_.lml[j] == lj) {
          double r = fd[x - 1][y - 1] + rel(i, j);
          fd[x][y] = std::min({r, d, s});
          if (!fd_out) td(i, j) = fd[x][y];
        } else {
          int p = a_.lml[i] - 1 - ioff, q = b_.lml[j] - 1 - joff;
          double r = fd[p][q] + td(i, j);
          fd[x][y] = std::min({r, d, s});
        }
      }
    }
  }

  // Walks the recomputed forest matrix of the subtree pair (i, j) and emits
  // mapped pairs, preferring a match over delete+insert on ties.
  void extract(int i, int j, EditMapping& out) {
    std::vector<std::vector<double>> fd;
    forest_pass(i, j, &fd);
    int li = a_.lml[i], lj = b_.lml[j];
    int ioff = li - 1, joff = lj - 1;
    int x = i - ioff, y = j - joff;
    while (x > 0 && y > 0) {
      int ii = x + ioff, jj = y + joff;
      if (a_.lml[ii] == li && b_.lml[jj] == lj) {
        if (fd[x][y] == fd[x - 1][y - 1] + rel(ii, jj)) {
          out.pairs.emplace_back(a_.pre_of_post[ii], b_.pre_of_post[jj]);
          --x;
          --y;
        } else if (fd[x][y] == fd[x - 1][y] + del_[ii]) {
          --x;
        } else {
          --y;
        }
      } else {
        int p = a_.lml[ii] - 1 - ioff, q = b_.lml[jj] - 1 - joff;
        if (fd[x][y] == fd[p][q] + td(ii, jj)) {
          extract(ii, jj, out);
          x = p;
          y = q;
        } else if (fd[x][y] == fd[x - 1][y] + del_[ii]) {
          --x;
        } else {
          --y;
        }
      }
    }
  }
};

}  // namespace

TedResult ted_ordered(const LabeledTree& t1, const LabeledTree& t2,
                      const CostModel& c) {
  return ZhangShasha(t1, t2, c).run();
}

TedResult ted_ordered(const Tree& t1, const Tree& t2, const CostModel& c) {
  LabeledTree a = plain_labels(t1), b = plain_labels(t2);
  return ted_ordered(a, b, c);
}

bool iso_ordered_vars(const Tree& t1, const Tree& t2) {
  return euler_string(t1) == euler_string(t2);
}

}  // namespace vted
