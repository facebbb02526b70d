#pragma once

#include <Eigen/Dense>
#include <vector>

#include "autotune/dataset.hpp"
#include "autotune/tree.hpp"

namespace autotune {

struct BoostConfig {
  int n_trees = 100;
  int depth = 3;
  double shrinkage = 0.1;
  int min_node = 10;
};

struct GbmModel {
  bool classifier = false;
  double f0 = 0.0;
  double shrinkage = 0.1;
  std::vector<RegressionTree> trees;

  // Training loss after each boosting round: mse for regression, log loss
  // for classification.
  std::vector<double> train_loss;

  // Additive score f0 + shrinkage * sum of tree outputs. For classifiers
  // this is the log-odds scale.
  Eigen::VectorXd raw_scores(const Eigen::MatrixXd& X) const;
};

// Gradient boosting with least-squares trees. Regression fits residuals
// directly; classification does one Newton step per leaf on the logistic
// loss.
GbmModel gbm_fit(const Dataset& train, const BoostConfig& cfg);

}  // namespace autotune
