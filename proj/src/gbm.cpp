#include "autotune/gbm.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "autotune/metrics.hpp"

namespace autotune {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void validate(const Dataset& train, const BoostConfig& cfg) {
  const int n = static_cast<int>(train.n_rows());
  if (cfg.n_trees < 1) throw std::invalid_argument("gbm: n_trees must be >= 1");
  if (cfg.depth < 1) throw std::invalid_argument("gbm: depth must be >= 1");
  if (!(cfg.shrinkage > 0.0 && cfg.shrinkage <= 1.0)) {
    throw std::invalid_argument("gbm: shrinkage must lie in (0, 1]");
  }
  if (cfg.min_node < 1 || cfg.min_node > n) {
    throw std::invalid_argument("gbm: min_node must lie in 1..n");
  }
  if (train.response.kind == ResponseKind::Binary) {
    const double s = train.response.values.sum();
    if (s == 0.0 || s == static_cast<double>(n)) {
      throw std::invalid_argument("gbm: needs both classes present");
    }
  }
}

}  // namespace

GbmModel gbm_fit(const Dataset& train, const BoostConfig& cfg) {
  validate(train, cfg);
  const Eigen::MatrixXd& X = train.features;
  const Eigen::VectorXd& y = train.response.values;
  const int n = static_cast<int>(X.rows());

  GbmModel model;
  model.classifier = train.response.kind == ResponseKind::Binary;
  model.shrinkage = cfg.shrinkage;
  model.trees.reserve(cfg.n_trees);
  model.train_loss.reserve(cfg.n_trees);

  if (model.classifier) {
    const double p_bar =
        std::min(1.0 - 1e-12, std::max(1e-12, y.mean()));
    model.f0 = std::log(p_bar / (1.0 - p_bar));
  } else {
    model.f0 = y.mean();
  }

  const std::vector<std::vector<int>> sorted = presort_columns(X);
  const Eigen::VectorXd unit = Eigen::VectorXd::Ones(n);
  const TreeConfig tree_cfg{cfg.depth, cfg.min_node};

  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, model.f0);
  Eigen::VectorXd residual(n), prob(n);

  for (int m = 0; m < cfg.n_trees; ++m) {
    if (model.classifier) {
      for (int i = 0; i < n; ++i) prob[i] = sigmoid(f[i]);
      residual = y - prob;
    } else {
      residual = y - f;
    }

    RegressionTree tree;
    tree.fit_presorted(X, residual, unit, tree_cfg, sorted);

    if (model.classifier) {
      // Newton step per leaf: sum of residuals over sum of p(1-p).
      std::map<int, std::pair<double, double>> acc;
      std::vector<int> leaf_of(n);
      for (int i = 0; i < n; ++i) {
        const int leaf = tree.leaf_for(X, i);
        leaf_of[i] = leaf;
        auto& a = acc[leaf];
        a.first += residual[i];
        a.second += prob[i] * (1.0 - prob[i]);
      }
      for (const auto& [leaf, a] : acc) {
        tree.nodes()[leaf].value = a.first / std::max(a.second, 1e-12);
      }
      for (int i = 0; i < n; ++i) {
        f[i] += cfg.shrinkage * tree.nodes()[leaf_of[i]].value;
      }
    } else {
      f += cfg.shrinkage * tree.predict(X);
    }

    model.trees.push_back(std::move(tree));
    if (model.classifier) {
      Eigen::VectorXd p_hat(n);
      for (int i = 0; i < n; ++i) p_hat[i] = sigmoid(f[i]);
      model.train_loss.push_back(log_loss(y, p_hat));
    } else {
      model.train_loss.push_back(mse(y, f));
    }
  }
  return model;
}

Eigen::VectorXd GbmModel::raw_scores(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd f = Eigen::VectorXd::Constant(X.rows(), f0);
  for (const auto& tree : trees) f += shrinkage * tree.predict(X);
  return f;
}

}  // namespace autotune
