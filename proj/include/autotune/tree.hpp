#pragma once

#include <Eigen/Dense>
#include <vector>

namespace autotune {

struct TreeConfig {
  int max_depth = 6;
  int min_node = 1;  // minimum observations in each child
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  double value = 0.0;
  int left = -1;
  int right = -1;

  bool is_leaf() const { return feature < 0; }
};

// Weighted least-squares regression tree, exact greedy splits. Candidate
// thresholds are midpoints between consecutive distinct feature values; the
// best split maximizes the weighted sum-of-squares reduction, ties broken by
// lowest feature index, then lowest threshold. Zero-gain splits are taken
// when nothing better exists, which lets deeper trees express interactions
// the root split cannot see.
class RegressionTree {
 public:
  void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           const Eigen::VectorXd& w, const TreeConfig& cfg);

  // Same fit, reusing column orders from presort_columns. Ensembles call
  // this so the sort happens once, not once per tree.
  void fit_presorted(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& w, const TreeConfig& cfg,
                     const std::vector<std::vector<int>>& sorted);

  double predict_row(const Eigen::MatrixXd& X, Eigen::Index row) const;
  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
  int leaf_for(const Eigen::MatrixXd& X, Eigen::Index row) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::vector<TreeNode>& nodes() { return nodes_; }

 private:
  std::vector<TreeNode> nodes_;
};

// Row indices of X sorted ascending by each column.
std::vector<std::vector<int>> presort_columns(const Eigen::MatrixXd& X);

}  // namespace autotune
