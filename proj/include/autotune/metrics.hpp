#pragma once

#include <Eigen/Dense>
#include <string>

#include "autotune/dataset.hpp"

namespace autotune {

enum class MetricKind { Accuracy, AUC, RMSE, MAE, MSE, LogLoss };

bool higher_is_better(MetricKind m);
std::string to_string(MetricKind m);
MetricKind metric_from_string(const std::string& s);

// Metric reported first for a response kind: accuracy for binary, rmse for
// continuous.
MetricKind primary_metric(ResponseKind kind);

// Fraction of exact matches between 0/1 label vectors.
double accuracy(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted);

// Probability that a random positive outscores a random negative, ties
// counted half. Rank statistic, tied scores get averaged ranks.
double auc(const Eigen::VectorXd& truth, const Eigen::VectorXd& scores);

double rmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted);
double mae(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted);
double mse(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted);

// Mean negative log likelihood of 0/1 outcomes under predicted probabilities,
// probabilities clipped to [1e-12, 1 - 1e-12].
double log_loss(const Eigen::VectorXd& truth, const Eigen::VectorXd& probs);

}  // namespace autotune
