#include "autotune/model.hpp"

#include <cmath>
#include <stdexcept>

namespace autotune {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Prediction from_raw(ResponseKind kind, Eigen::VectorXd raw) {
  Prediction out;
  out.kind = kind;
  if (kind == ResponseKind::Continuous) {
    out.values = raw;
    out.scores = std::move(raw);
    return out;
  }
  out.values.resize(raw.size());
  out.scores.resize(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    out.values[i] = raw[i] >= 0.0 ? 1.0 : 0.0;
    out.scores[i] = sigmoid(raw[i]);
  }
  return out;
}

}  // namespace

std::string to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::Svm: return "svm";
    case LearnerKind::Gbm: return "gbm";
    case LearnerKind::AdaBoost: return "ada";
    case LearnerKind::ElasticNet: return "en";
  }
  throw std::invalid_argument("unknown learner");
}

LearnerKind learner_from_string(const std::string& s) {
  if (s == "svm") return LearnerKind::Svm;
  if (s == "gbm") return LearnerKind::Gbm;
  if (s == "ada" || s == "adaboost") return LearnerKind::AdaBoost;
  if (s == "en" || s == "enet" || s == "elasticnet") {
    return LearnerKind::ElasticNet;
  }
  throw std::invalid_argument("unknown learner '" + s + "'");
}

LearnerKind kind_of(const LearnerConfig& cfg) {
  switch (cfg.index()) {
    case 0: return LearnerKind::Svm;
    case 1: return LearnerKind::Gbm;
    case 2: return LearnerKind::AdaBoost;
    default: return LearnerKind::ElasticNet;
  }
}

FittedModel fit_model(const Dataset& train, const LearnerConfig& cfg) {
  FittedModel out;
  out.learner = kind_of(cfg);
  out.response = train.response.kind;
  out.n_features = train.n_features();
  switch (out.learner) {
    case LearnerKind::Svm: {
      const auto& c = std::get<SvmConfig>(cfg);
      out.model = train.response.kind == ResponseKind::Binary
                      ? svm_fit(train, c)
                      : svr_fit(train, c);
      break;
    }
    case LearnerKind::Gbm:
      out.model = gbm_fit(train, std::get<BoostConfig>(cfg));
      break;
    case LearnerKind::AdaBoost:
      out.model = adaboost_fit(train, std::get<AdaBoostConfig>(cfg));
      break;
    case LearnerKind::ElasticNet:
      out.model = enet_fit(train, std::get<EnetConfig>(cfg));
      break;
  }
  return out;
}

Prediction predict(const FittedModel& fitted, const Eigen::MatrixXd& features) {
  if (features.cols() != fitted.n_features) {
    throw std::invalid_argument(
        "predict: expected " + std::to_string(fitted.n_features) +
        " features, got " + std::to_string(features.cols()));
  }
  if (features.rows() == 0) {
    throw std::invalid_argument("predict: no rows");
  }
  Eigen::VectorXd raw;
  switch (fitted.learner) {
    case LearnerKind::Svm:
      raw = std::get<SvmModel>(fitted.model).decision_values(features);
      break;
    case LearnerKind::Gbm:
      raw = std::get<GbmModel>(fitted.model).raw_scores(features);
      break;
    case LearnerKind::AdaBoost:
      raw = std::get<AdaBoostModel>(fitted.model).margins(features);
      break;
    case LearnerKind::ElasticNet:
      raw = std::get<EnetModel>(fitted.model).linear_predictor(features);
      break;
  }
  return from_raw(fitted.response, std::move(raw));
}

}  // namespace autotune
