#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "autotune/dataset.hpp"
#include "autotune/model.hpp"
#include "autotune/search_space.hpp"

namespace autotune {

struct CrossValidation {
  int k = 10;
};

struct FastHoldout {
  double fraction = 0.5;
};

using EvalStrategy = std::variant<CrossValidation, FastHoldout>;

std::string strategy_label(const EvalStrategy& strategy);

// Tuning loss for one learner on one training set. The resampling plan
// (folds or a single holdout) is drawn once at construction and reused for
// every candidate, so two configs are always scored on identical splits.
// Binary responses are resampled with stratification.
class Objective {
 public:
  Objective(Dataset train, LearnerKind learner, EvalStrategy strategy,
            std::uint64_t seed);

  // Mean held-out loss of the candidate: 1 - accuracy for binary responses,
  // rmse for continuous ones. Returns +infinity if any fit or prediction
  // fails.
  double evaluate(const std::vector<double>& naturals) const;
  double evaluate_scaled(const Eigen::VectorXd& scaled) const;

  LearnerConfig config_from(const std::vector<double>& naturals) const;

  const SearchSpace& space() const { return space_; }
  const Dataset& train() const { return train_; }
  LearnerKind learner() const { return learner_; }
  const EvalStrategy& strategy() const { return strategy_; }
  ResponseKind response() const { return train_.response.kind; }
  std::uint64_t seed() const { return seed_; }
  std::string loss_name() const;

  struct Resample {
    std::vector<int> fit_rows;   // indices into the training set
    std::vector<int> eval_rows;
  };
  const std::vector<Resample>& resamples() const { return resamples_; }
  const std::vector<Dataset>& fit_sets() const { return fit_sets_; }
  const std::vector<Dataset>& eval_sets() const { return eval_sets_; }

 private:
  Dataset train_;
  LearnerKind learner_;
  EvalStrategy strategy_;
  std::uint64_t seed_;
  SearchSpace space_;
  std::vector<Resample> resamples_;
  std::vector<Dataset> fit_sets_;
  std::vector<Dataset> eval_sets_;
};

}  // namespace autotune
