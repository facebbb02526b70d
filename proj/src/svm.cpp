#include "autotune/svm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace autotune {

namespace {

constexpr double kKktTol = 1e-3;
constexpr int kMaxIter = 200000;

void standardize(const Eigen::MatrixXd& X, Eigen::MatrixXd& Xs,
                 Eigen::VectorXd& mean, Eigen::VectorXd& scale) {
  const double n = static_cast<double>(X.rows());
  mean = X.colwise().mean();
  Xs = X.rowwise() - mean.transpose();
  scale.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double sd = std::sqrt(Xs.col(j).squaredNorm() / n);
    scale[j] = sd > 1e-12 ? sd : 1.0;
    Xs.col(j) /= scale[j];
  }
}

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& Xs, double gamma) {
  const Eigen::VectorXd sq = Xs.rowwise().squaredNorm();
  Eigen::MatrixXd K = -2.0 * (Xs * Xs.transpose());
  K.colwise() += sq;
  K.rowwise() += sq.transpose();
  K = (-gamma * K.array()).exp();
  return K;
}

struct SmoSolution {
  Eigen::VectorXd lambda;
  double bias = 0.0;
  int iterations = 0;
  double gap = 0.0;
};

// Minimizes 0.5 l'Ql + p'l subject to y'l = 0, 0 <= l <= C, with
// Q(s,t) = y_s y_t K(s,t). kernel_at(s,t) supplies K.
template <class KernelAt>
SmoSolution smo_solve(int m, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& p, double C,
                      KernelAt kernel_at) {
  SmoSolution sol;
  sol.lambda = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd g = p;
  const double inf = std::numeric_limits<double>::infinity();

  while (sol.iterations < kMaxIter) {
    int i = -1, j = -1;
    double g_max = -inf, g_min = inf;
    for (int t = 0; t < m; ++t) {
      const double v = -y[t] * g[t];
      const bool in_up = (y[t] > 0.0 && sol.lambda[t] < C) ||
                         (y[t] < 0.0 && sol.lambda[t] > 0.0);
      const bool in_low = (y[t] > 0.0 && sol.lambda[t] > 0.0) ||
                          (y[t] < 0.0 && sol.lambda[t] < C);
      if (in_up && v > g_max) {
        g_max = v;
        i = t;
      }
      if (in_low && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    if (i < 0 || j < 0) {
      sol.gap = 0.0;
      sol.bias = i >= 0 ? g_max : (j >= 0 ? g_min : 0.0);
      return sol;
    }
    sol.gap = g_max - g_min;
    sol.bias = 0.5 * (g_max + g_min);
    if (sol.gap <= kKktTol || i == j) return sol;

    const double kii = kernel_at(i, i);
    const double kjj = kernel_at(j, j);
    const double kij = kernel_at(i, j);
    const double a = std::max(kii + kjj - 2.0 * kij, 1e-12);
    double t_step = sol.gap / a;
    const double t_max_i = y[i] > 0.0 ? C - sol.lambda[i] : sol.lambda[i];
    const double t_max_j = y[j] > 0.0 ? sol.lambda[j] : C - sol.lambda[j];
    t_step = std::min(t_step, std::min(t_max_i, t_max_j));

    sol.lambda[i] += y[i] * t_step;
    sol.lambda[j] -= y[j] * t_step;
    sol.lambda[i] = std::min(C, std::max(0.0, sol.lambda[i]));
    sol.lambda[j] = std::min(C, std::max(0.0, sol.lambda[j]));
    for (int s = 0; s < m; ++s) {
      g[s] += y[s] * t_step * (kernel_at(s, i) - kernel_at(s, j));
    }
    ++sol.iterations;
  }
  return sol;
}

void validate_common(const Dataset& train, const SvmConfig& cfg) {
  if (train.n_rows() < 2) throw std::invalid_argument("svm: needs >= 2 rows");
  if (!(cfg.cost > 0.0)) throw std::invalid_argument("svm: cost must be > 0");
  if (!(cfg.gamma > 0.0)) throw std::invalid_argument("svm: gamma must be > 0");
}

}  // namespace

SvmModel svm_fit(const Dataset& train, const SvmConfig& cfg) {
  validate_common(train, cfg);
  if (train.response.kind != ResponseKind::Binary) {
    throw std::invalid_argument("svm classification needs a binary response");
  }
  const int n = static_cast<int>(train.n_rows());
  const double n_pos = train.response.values.sum();
  if (n_pos == 0.0 || n_pos == static_cast<double>(n)) {
    throw std::invalid_argument("svm: needs both classes present");
  }

  SvmModel model;
  model.classifier = true;
  model.gamma = cfg.gamma;
  Eigen::MatrixXd Xs;
  standardize(train.features, Xs, model.feature_mean, model.feature_scale);

  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = train.response.values[i] == 1.0 ? 1.0 : -1.0;
  }
  const Eigen::MatrixXd K = rbf_gram(Xs, cfg.gamma);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(n, -1.0);
  const SmoSolution sol = smo_solve(
      n, y, p, cfg.cost, [&K](int s, int t) { return K(s, t); });

  model.bias = sol.bias;
  model.iterations = sol.iterations;
  model.kkt_gap = sol.gap;
  int n_sv = 0;
  for (int i = 0; i < n; ++i) n_sv += sol.lambda[i] > 0.0;
  model.support_vectors.resize(n_sv, Xs.cols());
  model.dual_coefs.resize(n_sv);
  int s = 0;
  for (int i = 0; i < n; ++i) {
    if (sol.lambda[i] > 0.0) {
      model.support_vectors.row(s) = Xs.row(i);
      model.dual_coefs[s] = y[i] * sol.lambda[i];
      ++s;
    }
  }
  return model;
}

SvmModel svr_fit(const Dataset& train, const SvmConfig& cfg) {
  validate_common(train, cfg);
  if (train.response.kind != ResponseKind::Continuous) {
    throw std::invalid_argument("svm regression needs a continuous response");
  }
  if (cfg.epsilon < 0.0) {
    throw std::invalid_argument("svm: epsilon must be >= 0");
  }
  const int n = static_cast<int>(train.n_rows());

  SvmModel model;
  model.classifier = false;
  model.gamma = cfg.gamma;
  Eigen::MatrixXd Xs;
  standardize(train.features, Xs, model.feature_mean, model.feature_scale);

  model.response_mean = train.response.values.mean();
  Eigen::VectorXd ys = train.response.values.array() - model.response_mean;
  const double y_sd = std::sqrt(ys.squaredNorm() / n);
  model.response_scale = y_sd > 1e-12 ? y_sd : 1.0;
  ys /= model.response_scale;

  const Eigen::MatrixXd K = rbf_gram(Xs, cfg.gamma);

  // Doubled problem over (alpha, alpha*).
  const int m = 2 * n;
  Eigen::VectorXd y2(m), p2(m);
  for (int i = 0; i < n; ++i) {
    y2[i] = 1.0;
    y2[n + i] = -1.0;
    p2[i] = cfg.epsilon - ys[i];
    p2[n + i] = cfg.epsilon + ys[i];
  }
  const SmoSolution sol =
      smo_solve(m, y2, p2, cfg.cost,
                [&K, n](int s, int t) { return K(s % n, t % n); });

  model.bias = sol.bias;
  model.iterations = sol.iterations;
  model.kkt_gap = sol.gap;
  Eigen::VectorXd beta(n);
  for (int i = 0; i < n; ++i) beta[i] = sol.lambda[i] - sol.lambda[n + i];
  int n_sv = 0;
  for (int i = 0; i < n; ++i) n_sv += beta[i] != 0.0;
  model.support_vectors.resize(n_sv, Xs.cols());
  model.dual_coefs.resize(n_sv);
  int s = 0;
  for (int i = 0; i < n; ++i) {
    if (beta[i] != 0.0) {
      model.support_vectors.row(s) = Xs.row(i);
      model.dual_coefs[s] = beta[i];
      ++s;
    }
  }
  return model;
}

Eigen::VectorXd SvmModel::decision_values(const Eigen::MatrixXd& X) const {
  if (X.cols() != feature_mean.size()) {
    throw std::invalid_argument("svm predict: feature count mismatch");
  }
  Eigen::MatrixXd Xs = X.rowwise() - feature_mean.transpose();
  for (Eigen::Index j = 0; j < Xs.cols(); ++j) Xs.col(j) /= feature_scale[j];

  Eigen::VectorXd f = Eigen::VectorXd::Constant(X.rows(), bias);
  for (Eigen::Index i = 0; i < Xs.rows(); ++i) {
    for (Eigen::Index s = 0; s < support_vectors.rows(); ++s) {
      f[i] += dual_coefs[s] *
              rbf_kernel(Xs.row(i), support_vectors.row(s), gamma);
    }
  }
  if (!classifier) {
    f = response_mean + (response_scale * f.array());
  }
  return f;
}

}  // namespace autotune
