#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "autotune/dataset.hpp"

namespace autotune {

template <class A, class B>
double rbf_kernel(const A& a, const B& b, double gamma) {
  return std::exp(-gamma * (a - b).squaredNorm());
}

struct SvmConfig {
  double cost = 1.0;
  double gamma = 0.1;
  double epsilon = 0.1;  // regression tube half-width, ignored by classifiers
};

struct SvmModel {
  bool classifier = true;
  double gamma = 0.1;
  Eigen::MatrixXd support_vectors;  // standardized coordinates
  Eigen::VectorXd dual_coefs;       // y_i * alpha_i, or beta_i for regression
  double bias = 0.0;
  Eigen::VectorXd feature_mean, feature_scale;
  double response_mean = 0.0, response_scale = 1.0;
  int iterations = 0;
  double kkt_gap = 0.0;  // final max-violating-pair gap

  // Raw decision values on the original feature scale. Log-odds-like for
  // classifiers, response units for regression.
  Eigen::VectorXd decision_values(const Eigen::MatrixXd& X) const;
};

// C-classification with an rbf kernel, solved by sequential minimal
// optimization with max-violating-pair working sets, KKT tolerance 1e-3.
SvmModel svm_fit(const Dataset& train, const SvmConfig& cfg);

// epsilon-regression on the same solver; features and response are
// standardized internally, so epsilon is in standard deviations of y.
SvmModel svr_fit(const Dataset& train, const SvmConfig& cfg);

}  // namespace autotune
