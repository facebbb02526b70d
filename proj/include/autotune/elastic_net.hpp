#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <vector>

#include "autotune/dataset.hpp"

namespace autotune {

// S(z, g) = sign(z) * max(|z| - g, 0)
double soft_threshold(double z, double g);

struct EnetConfig {
  double alpha = 1.0;   // mixing weight, 1 = lasso, 0 = ridge
  double lambda = 0.0;  // overall penalty strength
};

struct EnetOptions {
  double tol = 1e-8;      // max coefficient change per sweep, standardized
  int max_sweeps = 2000;  // coordinate descent sweeps per solve
  int max_irls = 100;     // outer reweighting iterations for classifiers
};

struct EnetModel {
  bool classifier = false;
  double alpha = 1.0;
  double lambda = 0.0;
  Eigen::VectorXd coefficients;  // original feature scale
  double intercept = 0.0;
  Eigen::VectorXd feature_mean, feature_scale;
  bool converged = true;

  // Penalized objective after each full sweep of the final least-squares
  // solve (standardized scale).
  std::vector<double> objective_trace;

  Eigen::VectorXd linear_predictor(const Eigen::MatrixXd& X) const;

  nlohmann::json to_json() const;
  static EnetModel from_json(const nlohmann::json& j);
};

// Penalized linear model: squared error for continuous responses, logistic
// deviance via iteratively reweighted least squares for binary ones. The
// penalty is lambda * (alpha * |b|_1 + (1 - alpha) / 2 * |b|_2^2) against a
// loss averaged over rows; features are standardized internally and the
// intercept is never penalized. If the solver hits its iteration cap the
// best iterate is kept and converged is set false.
EnetModel enet_fit(const Dataset& train, const EnetConfig& cfg,
                   const EnetOptions& opts = {});

// Smallest lambda that zeroes every coefficient, with the mixing weight
// floored at 0.001 so ridge-leaning fits still get a finite path start.
double enet_lambda_max(const Dataset& train, double alpha);

// Decreasing lambda sequence: count log-spaced values spanning the given
// number of decades below lambda_max.
std::vector<double> default_lambda_path(double lambda_max, int count = 100,
                                        double decades = 4.0);

struct EnetPath {
  std::vector<double> lambdas;
  Eigen::MatrixXd coefficients;  // p x L, original scale
  Eigen::VectorXd intercepts;    // L
};

// Fits the whole sequence warm-starting each lambda from the previous one.
EnetPath enet_fit_path(const Dataset& train, double alpha,
                       const std::vector<double>& lambdas,
                       const EnetOptions& opts = {});

}  // namespace autotune
