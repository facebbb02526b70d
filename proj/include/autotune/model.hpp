#pragma once

#include <string>
#include <variant>

#include "autotune/adaboost.hpp"
#include "autotune/dataset.hpp"
#include "autotune/elastic_net.hpp"
#include "autotune/gbm.hpp"
#include "autotune/svm.hpp"

namespace autotune {

enum class LearnerKind { Svm, Gbm, AdaBoost, ElasticNet };

std::string to_string(LearnerKind k);
LearnerKind learner_from_string(const std::string& s);

using LearnerConfig =
    std::variant<SvmConfig, BoostConfig, AdaBoostConfig, EnetConfig>;

LearnerKind kind_of(const LearnerConfig& cfg);

struct FittedModel {
  LearnerKind learner = LearnerKind::Svm;
  ResponseKind response = ResponseKind::Binary;
  Eigen::Index n_features = 0;
  std::variant<SvmModel, GbmModel, AdaBoostModel, EnetModel> model;
};

// Dispatches on config type and response kind; svm configs fit a classifier
// for binary responses and an epsilon-regressor for continuous ones.
FittedModel fit_model(const Dataset& train, const LearnerConfig& cfg);

struct Prediction {
  ResponseKind kind = ResponseKind::Binary;
  // Binary: 0/1 labels. Continuous: predicted values.
  Eigen::VectorXd values;
  // Binary: probability-like score for class 1. Continuous: same as values.
  Eigen::VectorXd scores;
};

Prediction predict(const FittedModel& fitted, const Eigen::MatrixXd& features);

}  // namespace autotune
