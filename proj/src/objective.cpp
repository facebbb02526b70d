#include "autotune/objective.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "autotune/metrics.hpp"

namespace autotune {

std::string strategy_label(const EvalStrategy& strategy) {
  std::ostringstream out;
  if (const auto* cv = std::get_if<CrossValidation>(&strategy)) {
    out << "cv" << cv->k;
  } else {
    out << "fast" << std::get<FastHoldout>(strategy).fraction;
  }
  return out.str();
}

Objective::Objective(Dataset train, LearnerKind learner, EvalStrategy strategy,
                     std::uint64_t seed)
    : train_(std::move(train)),
      learner_(learner),
      strategy_(strategy),
      seed_(seed),
      space_(default_space(learner, train_.response.kind)) {
  if (learner_ == LearnerKind::AdaBoost &&
      train_.response.kind != ResponseKind::Binary) {
    throw std::invalid_argument("adaboost tunes binary responses only");
  }
  const bool stratify = train_.response.kind == ResponseKind::Binary;

  if (const auto* cv = std::get_if<CrossValidation>(&strategy_)) {
    const FoldAssignment folds = vfold(train_, cv->k, stratify, seed_);
    for (int f = 1; f <= folds.k; ++f) {
      Resample r;
      r.eval_rows = folds.fold_rows(f);
      r.fit_rows = folds.complement_rows(f);
      resamples_.push_back(std::move(r));
    }
  } else {
    const auto& fast = std::get<FastHoldout>(strategy_);
    const TrainTestSplit split =
        fast_holdout(train_, fast.fraction, stratify, seed_);
    Resample r;
    r.fit_rows = split.train_indices;
    r.eval_rows = split.test_indices;
    resamples_.push_back(std::move(r));
  }

  for (const Resample& r : resamples_) {
    fit_sets_.push_back(train_.subset(r.fit_rows));
    eval_sets_.push_back(train_.subset(r.eval_rows));
  }
}

LearnerConfig Objective::config_from(const std::vector<double>& naturals) const {
  if (static_cast<int>(naturals.size()) != space_.size()) {
    throw std::invalid_argument("candidate has wrong dimension");
  }
  switch (learner_) {
    case LearnerKind::Svm: {
      SvmConfig cfg;
      cfg.cost = naturals[0];
      cfg.gamma = naturals[1];
      if (naturals.size() > 2) cfg.epsilon = naturals[2];
      return cfg;
    }
    case LearnerKind::Gbm: {
      BoostConfig cfg;
      cfg.n_trees = static_cast<int>(naturals[0]);
      cfg.depth = static_cast<int>(naturals[1]);
      cfg.shrinkage = naturals[2];
      cfg.min_node = static_cast<int>(naturals[3]);
      return cfg;
    }
    case LearnerKind::AdaBoost: {
      AdaBoostConfig cfg;
      cfg.n_iters = static_cast<int>(naturals[0]);
      cfg.depth = static_cast<int>(naturals[1]);
      cfg.shrinkage = naturals[2];
      return cfg;
    }
    case LearnerKind::ElasticNet: {
      EnetConfig cfg;
      cfg.alpha = naturals[0];
      cfg.lambda = naturals[1];
      return cfg;
    }
  }
  throw std::logic_error("unreachable");
}

double Objective::evaluate(const std::vector<double>& naturals) const {
  try {
    const LearnerConfig cfg = config_from(naturals);
    double total = 0.0;
    for (std::size_t i = 0; i < fit_sets_.size(); ++i) {
      const FittedModel fitted = fit_model(fit_sets_[i], cfg);
      const Prediction pred = predict(fitted, eval_sets_[i].features);
      const Eigen::VectorXd& truth = eval_sets_[i].response.values;
      const double loss = response() == ResponseKind::Binary
                              ? 1.0 - accuracy(truth, pred.values)
                              : rmse(truth, pred.values);
      if (!std::isfinite(loss)) {
        return std::numeric_limits<double>::infinity();
      }
      total += loss;
    }
    return total / static_cast<double>(fit_sets_.size());
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

double Objective::evaluate_scaled(const Eigen::VectorXd& scaled) const {
  return evaluate(space_.naturals(scaled));
}

std::string Objective::loss_name() const {
  return response() == ResponseKind::Binary ? "error_rate" : "rmse";
}

}  // namespace autotune
