#pragma once

#include <Eigen/Dense>
#include <vector>

#include "autotune/dataset.hpp"
#include "autotune/tree.hpp"

namespace autotune {

struct AdaBoostConfig {
  int n_iters = 50;
  int depth = 1;
  double shrinkage = 1.0;
};

struct AdaBoostModel {
  std::vector<RegressionTree> trees;      // sign of the tree output votes
  std::vector<double> tree_weights;
  std::vector<double> round_errors;       // weighted error per kept round
  double default_margin = 0.0;            // used when no round was kept

  // Weighted vote sum over rounds, positive favors class 1.
  Eigen::VectorXd margins(const Eigen::MatrixXd& X) const;
};

// Discrete adaboost over depth-limited trees. Each round fits a weighted
// least-squares tree to the +-1 response and votes with the sign of its
// output; the round weight is (shrinkage / 2) * ln((1 - err) / err).
// A round with weighted error 0 is kept and boosting stops; a round with
// error >= 1/2 is dropped and boosting stops.
AdaBoostModel adaboost_fit(const Dataset& train, const AdaBoostConfig& cfg);

}  // namespace autotune
