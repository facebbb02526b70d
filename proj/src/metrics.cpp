#include "autotune/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace autotune {

namespace {

void check_pair(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                const char* what) {
  if (a.size() == 0) {
    throw std::invalid_argument(std::string(what) + ": empty input");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

void check_binary(const Eigen::VectorXd& truth, const char* what) {
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth[i] != 0.0 && truth[i] != 1.0) {
      throw std::invalid_argument(std::string(what) +
                                  ": truth labels must be 0 or 1");
    }
  }
}

}  // namespace

bool higher_is_better(MetricKind m) {
  return m == MetricKind::Accuracy || m == MetricKind::AUC;
}

std::string to_string(MetricKind m) {
  switch (m) {
    case MetricKind::Accuracy: return "accuracy";
    case MetricKind::AUC: return "auc";
    case MetricKind::RMSE: return "rmse";
    case MetricKind::MAE: return "mae";
    case MetricKind::MSE: return "mse";
    case MetricKind::LogLoss: return "log_loss";
  }
  throw std::invalid_argument("unknown metric");
}

MetricKind metric_from_string(const std::string& s) {
  if (s == "accuracy") return MetricKind::Accuracy;
  if (s == "auc") return MetricKind::AUC;
  if (s == "rmse") return MetricKind::RMSE;
  if (s == "mae") return MetricKind::MAE;
  if (s == "mse") return MetricKind::MSE;
  if (s == "log_loss") return MetricKind::LogLoss;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

MetricKind primary_metric(ResponseKind kind) {
  return kind == ResponseKind::Binary ? MetricKind::Accuracy
                                      : MetricKind::RMSE;
}

double accuracy(const Eigen::VectorXd& truth,
                const Eigen::VectorXd& predicted) {
  check_pair(truth, predicted, "accuracy");
  check_binary(truth, "accuracy");
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double auc(const Eigen::VectorXd& truth, const Eigen::VectorXd& scores) {
  check_pair(truth, scores, "auc");
  check_binary(truth, "auc");
  const Eigen::Index n = truth.size();
  Eigen::Index n_pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (truth[i] == 1.0) ++n_pos;
  }
  const Eigen::Index n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("auc: needs both classes present");
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return scores[a] < scores[b];
  });

  double rank_sum_pos = 0.0;
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index t = i; t <= j; ++t) {
      if (truth[order[t]] == 1.0) rank_sum_pos += avg_rank;
    }
    i = j + 1;
  }
  const double n1 = static_cast<double>(n_pos);
  return (rank_sum_pos - n1 * (n1 + 1.0) / 2.0) /
         (n1 * static_cast<double>(n_neg));
}

double mse(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted) {
  check_pair(truth, predicted, "mse");
  return (truth - predicted).squaredNorm() / static_cast<double>(truth.size());
}

double rmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted) {
  return std::sqrt(mse(truth, predicted));
}

double mae(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted) {
  check_pair(truth, predicted, "mae");
  return (truth - predicted).cwiseAbs().sum() /
         static_cast<double>(truth.size());
}

double log_loss(const Eigen::VectorXd& truth, const Eigen::VectorXd& probs) {
  check_pair(truth, probs, "log_loss");
  check_binary(truth, "log_loss");
  constexpr double kClip = 1e-12;
  double total = 0.0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    const double p = std::min(1.0 - kClip, std::max(kClip, probs[i]));
    total += truth[i] == 1.0 ? -std::log(p) : -std::log(1.0 - p);
  }
  return total / static_cast<double>(truth.size());
}

}  // namespace autotune
