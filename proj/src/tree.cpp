#include "autotune/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace autotune {

namespace {

constexpr double kTinyWeight = 1e-300;
constexpr double kPureVariance = 1e-12;

struct BuildTask {
  int node_id = 0;
  int depth = 0;
  std::vector<std::vector<int>> order;  // per-feature sorted row ids
};

}  // namespace

std::vector<std::vector<int>> presort_columns(const Eigen::MatrixXd& X) {
  const int p = static_cast<int>(X.cols());
  std::vector<std::vector<int>> sorted(p);
  for (int f = 0; f < p; ++f) {
    std::vector<int>& ord = sorted[f];
    ord.resize(X.rows());
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(),
                     [&X, f](int a, int b) { return X(a, f) < X(b, f); });
  }
  return sorted;
}

void RegressionTree::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& w, const TreeConfig& cfg) {
  fit_presorted(X, y, w, cfg, presort_columns(X));
}

void RegressionTree::fit_presorted(const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& w,
                                   const TreeConfig& cfg,
                                   const std::vector<std::vector<int>>& sorted) {
  const int n = static_cast<int>(X.rows());
  const int p = static_cast<int>(X.cols());
  if (y.size() != n || w.size() != n) {
    throw std::invalid_argument("tree fit: row count mismatch");
  }
  if (n < 1 || p < 1) throw std::invalid_argument("tree fit: empty input");
  if (cfg.max_depth < 1 || cfg.min_node < 1) {
    throw std::invalid_argument("tree fit: bad depth or node size");
  }
  if (static_cast<int>(sorted.size()) != p) {
    throw std::invalid_argument("tree fit: presort column count mismatch");
  }

  nodes_.clear();
  nodes_.emplace_back();

  std::vector<BuildTask> stack;
  {
    BuildTask root;
    root.node_id = 0;
    root.depth = 0;
    root.order = sorted;
    stack.push_back(std::move(root));
  }

  std::vector<char> goes_left(n, 0);

  while (!stack.empty()) {
    BuildTask task = std::move(stack.back());
    stack.pop_back();

    const std::vector<int>& rows = task.order[0];
    const int count = static_cast<int>(rows.size());
    double sum_w = 0.0, sum_wy = 0.0, sum_wyy = 0.0;
    for (int r : rows) {
      sum_w += w[r];
      sum_wy += w[r] * y[r];
      sum_wyy += w[r] * y[r] * y[r];
    }
    TreeNode& node = nodes_[task.node_id];
    node.value = sum_wy / std::max(sum_w, kTinyWeight);

    const double variance =
        (sum_wyy - sum_wy * sum_wy / std::max(sum_w, kTinyWeight)) /
        std::max(sum_w, kTinyWeight);
    if (task.depth >= cfg.max_depth || count < 2 * cfg.min_node ||
        variance <= kPureVariance) {
      continue;
    }

    int best_feature = -1;
    int best_pos = -1;
    double best_threshold = 0.0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int f = 0; f < p; ++f) {
      const std::vector<int>& ord = task.order[f];
      double wl = 0.0, wyl = 0.0;
      for (int i = 0; i + 1 < count; ++i) {
        const int r = ord[i];
        wl += w[r];
        wyl += w[r] * y[r];
        const double a = X(r, f);
        const double b = X(ord[i + 1], f);
        if (a == b) continue;
        const int cl = i + 1;
        if (cl < cfg.min_node || count - cl < cfg.min_node) continue;
        const double thr = 0.5 * (a + b);
        if (!(a < thr) || !(thr < b)) continue;  // midpoint rounded onto a value
        const double wr = sum_w - wl;
        const double wyr = sum_wy - wyl;
        if (wl <= 0.0 || wr <= 0.0) continue;
        const double score = wyl * wyl / wl + wyr * wyr / wr;
        if (score > best_score) {
          best_score = score;
          best_feature = f;
          best_pos = i;
          best_threshold = thr;
        }
      }
    }
    if (best_feature < 0) continue;

    const std::vector<int>& split_ord = task.order[best_feature];
    for (int r : split_ord) goes_left[r] = 0;
    for (int i = 0; i <= best_pos; ++i) goes_left[split_ord[i]] = 1;

    const int left_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_.emplace_back();
    TreeNode& parent = nodes_[task.node_id];
    parent.feature = best_feature;
    parent.threshold = best_threshold;
    parent.left = left_id;
    parent.right = left_id + 1;

    BuildTask left, right;
    left.node_id = left_id;
    right.node_id = left_id + 1;
    left.depth = right.depth = task.depth + 1;
    left.order.resize(p);
    right.order.resize(p);
    for (int f = 0; f < p; ++f) {
      left.order[f].reserve(best_pos + 1);
      right.order[f].reserve(count - best_pos - 1);
      for (int r : task.order[f]) {
        (goes_left[r] ? left.order[f] : right.order[f]).push_back(r);
      }
    }
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
}

double RegressionTree::predict_row(const Eigen::MatrixXd& X,
                                   Eigen::Index row) const {
  return nodes_[static_cast<std::size_t>(leaf_for(X, row))].value;
}

int RegressionTree::leaf_for(const Eigen::MatrixXd& X,
                             Eigen::Index row) const {
  if (nodes_.empty()) throw std::logic_error("tree not fitted");
  int id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& node = nodes_[id];
    id = X(row, node.feature) <= node.threshold ? node.left : node.right;
  }
  return id;
}

Eigen::VectorXd RegressionTree::predict(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = predict_row(X, i);
  return out;
}

}  // namespace autotune
