#include "autotune/alpha_grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "autotune/elastic_net.hpp"
#include "autotune/metrics.hpp"

namespace autotune {

namespace {

constexpr int kPathLength = 100;
constexpr double kTieTol = 1e-12;

double holdout_loss(const Dataset& eval, const Eigen::VectorXd& coef,
                    double intercept, bool classifier) {
  const Eigen::VectorXd eta = (eval.features * coef).array() + intercept;
  if (classifier) {
    Eigen::VectorXd labels(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      labels[i] = eta[i] >= 0.0 ? 1.0 : 0.0;
    }
    return 1.0 - accuracy(eval.response.values, labels);
  }
  return rmse(eval.response.values, eta);
}

}  // namespace

TuneResult grid_alpha_lambda(const Objective& objective, LambdaRule rule) {
  if (objective.learner() != LearnerKind::ElasticNet) {
    throw std::invalid_argument("alpha grid tunes the elastic net only");
  }
  if (!std::holds_alternative<CrossValidation>(objective.strategy())) {
    throw std::invalid_argument("alpha grid needs cross validation folds");
  }
  const auto& fit_sets = objective.fit_sets();
  const auto& eval_sets = objective.eval_sets();
  const int k = static_cast<int>(fit_sets.size());
  const bool classifier = objective.response() == ResponseKind::Binary;
  const double inf = std::numeric_limits<double>::infinity();

  TuneResult result;
  for (int a = 0; a <= 10; ++a) {
    const double alpha = a / 10.0;
    double cand_lambda = 0.0;
    double cand_loss = inf;
    try {
      const double lambda_max = enet_lambda_max(objective.train(), alpha);
      const std::vector<double> lambdas =
          default_lambda_path(lambda_max, kPathLength);
      const int L = static_cast<int>(lambdas.size());

      Eigen::MatrixXd losses(k, L);
      for (int f = 0; f < k; ++f) {
        const EnetPath path = enet_fit_path(fit_sets[f], alpha, lambdas);
        for (int l = 0; l < L; ++l) {
          losses(f, l) = holdout_loss(eval_sets[f], path.coefficients.col(l),
                                      path.intercepts[l], classifier);
        }
      }

      Eigen::VectorXd mean(L), se(L);
      for (int l = 0; l < L; ++l) {
        mean[l] = losses.col(l).mean();
        const double var =
            (losses.col(l).array() - mean[l]).square().sum() /
            std::max(1, k - 1);
        se[l] = std::sqrt(var / k);
      }

      // Lambdas run high to low; the first qualifying index is the most
      // regularized choice.
      const double min_mean = mean.minCoeff();
      int pick = 0;
      while (mean[pick] > min_mean + kTieTol) ++pick;
      if (rule == LambdaRule::OneSE) {
        const double bar = mean[pick] + se[pick];
        int relaxed = 0;
        while (mean[relaxed] > bar + kTieTol) ++relaxed;
        pick = relaxed;
      }
      cand_lambda = lambdas[pick];
      cand_loss = mean[pick];
    } catch (const std::exception&) {
      cand_lambda = 0.0;
      cand_loss = inf;
    }

    TraceEntry entry;
    entry.scaled.resize(2);
    entry.scaled[0] = alpha;
    entry.scaled[1] = cand_lambda > 0.0 ? std::log10(cand_lambda) : 0.0;
    entry.loss = cand_loss;
    result.trace.push_back(entry);
    ++result.n_evals;

    if (result.best_scaled.size() == 0 || cand_loss < result.best_loss) {
      result.best_loss = cand_loss;
      result.best_scaled = entry.scaled;
      result.best_naturals = {alpha, cand_lambda};
    }
  }
  return result;
}

}  // namespace autotune
