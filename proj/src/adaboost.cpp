#include "autotune/adaboost.hpp"

#include <cmath>
#include <stdexcept>

namespace autotune {

namespace {

double sign_vote(double v) { return v >= 0.0 ? 1.0 : -1.0; }

}  // namespace

AdaBoostModel adaboost_fit(const Dataset& train, const AdaBoostConfig& cfg) {
  if (train.response.kind != ResponseKind::Binary) {
    throw std::invalid_argument("adaboost: needs a binary response");
  }
  if (cfg.n_iters < 1) {
    throw std::invalid_argument("adaboost: n_iters must be >= 1");
  }
  if (cfg.depth < 1) throw std::invalid_argument("adaboost: depth must be >= 1");
  if (!(cfg.shrinkage > 0.0 && cfg.shrinkage <= 1.0)) {
    throw std::invalid_argument("adaboost: shrinkage must lie in (0, 1]");
  }

  const Eigen::MatrixXd& X = train.features;
  const int n = static_cast<int>(X.rows());
  const double n_pos = train.response.values.sum();
  if (n_pos == 0.0 || n_pos == static_cast<double>(n)) {
    throw std::invalid_argument("adaboost: needs both classes present");
  }

  Eigen::VectorXd y_pm(n);
  for (int i = 0; i < n; ++i) {
    y_pm[i] = train.response.values[i] == 1.0 ? 1.0 : -1.0;
  }

  AdaBoostModel model;
  model.default_margin =
      std::log((n_pos + 1.0) / (static_cast<double>(n) - n_pos + 1.0));

  const std::vector<std::vector<int>> sorted = presort_columns(X);
  const TreeConfig tree_cfg{cfg.depth, 1};
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / n);

  for (int t = 0; t < cfg.n_iters; ++t) {
    RegressionTree tree;
    tree.fit_presorted(X, y_pm, w, tree_cfg, sorted);

    Eigen::VectorXd vote(n);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      vote[i] = sign_vote(tree.predict_row(X, i));
      if (vote[i] != y_pm[i]) err += w[i];
    }

    if (err >= 0.5) break;
    const double floored = std::max(err, 1e-12);
    const double alpha =
        0.5 * cfg.shrinkage * std::log((1.0 - floored) / floored);

    model.trees.push_back(std::move(tree));
    model.tree_weights.push_back(alpha);
    model.round_errors.push_back(err);
    if (err == 0.0) break;

    for (int i = 0; i < n; ++i) {
      w[i] *= std::exp(-alpha * y_pm[i] * vote[i]);
    }
    w /= w.sum();
  }
  return model;
}

Eigen::VectorXd AdaBoostModel::margins(const Eigen::MatrixXd& X) const {
  if (trees.empty()) {
    return Eigen::VectorXd::Constant(X.rows(), default_margin);
  }
  Eigen::VectorXd m = Eigen::VectorXd::Zero(X.rows());
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const Eigen::VectorXd raw = trees[t].predict(X);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m[i] += tree_weights[t] * sign_vote(raw[i]);
    }
  }
  return m;
}

}  // namespace autotune
