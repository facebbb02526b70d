#include "autotune/elastic_net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace autotune {

namespace {

double softplus(double x) {
  if (x > 30.0) return x;
  return std::log1p(std::exp(x));
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double penalty(const Eigen::VectorXd& beta, double alpha, double lambda) {
  return lambda * (alpha * beta.cwiseAbs().sum() +
                   0.5 * (1.0 - alpha) * beta.squaredNorm());
}

struct Standardized {
  Eigen::MatrixXd Xs;
  Eigen::VectorXd mean, scale;
};

Standardized standardize(const Eigen::MatrixXd& X) {
  Standardized s;
  const double n = static_cast<double>(X.rows());
  s.mean = X.colwise().mean();
  s.Xs = X.rowwise() - s.mean.transpose();
  s.scale.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double sd = std::sqrt(s.Xs.col(j).squaredNorm() / n);
    s.scale[j] = sd > 1e-12 ? sd : 1.0;
    s.Xs.col(j) /= s.scale[j];
  }
  return s;
}

// One pass of cyclic coordinate descent on the weighted penalized least
// squares problem, intercept included. Returns the largest parameter change.
double cd_sweep(const Eigen::MatrixXd& Xs, const Eigen::VectorXd* w,
                const Eigen::VectorXd& v, double w_sum, double alpha,
                double lambda, double& b0, Eigen::VectorXd& beta,
                Eigen::VectorXd& r) {
  const double n = static_cast<double>(Xs.rows());
  double delta_max = 0.0;

  const double d0 = (w ? w->cwiseProduct(r).sum() : r.sum()) / w_sum;
  b0 += d0;
  r.array() -= d0;
  delta_max = std::abs(d0);

  const double l1 = lambda * alpha;
  const double l2 = lambda * (1.0 - alpha);
  for (Eigen::Index j = 0; j < Xs.cols(); ++j) {
    const double denom = v[j] + l2;
    if (denom <= 0.0) continue;
    const double dot =
        w ? Xs.col(j).cwiseProduct(*w).dot(r) : Xs.col(j).dot(r);
    const double z = dot / n + v[j] * beta[j];
    const double b_new = soft_threshold(z, l1) / denom;
    const double d = b_new - beta[j];
    if (d != 0.0) {
      r -= d * Xs.col(j);
      beta[j] = b_new;
      delta_max = std::max(delta_max, std::abs(d));
    }
  }
  return delta_max;
}

double gaussian_objective(const Eigen::VectorXd& r, const Eigen::VectorXd* w,
                          const Eigen::VectorXd& beta, double alpha,
                          double lambda) {
  const double n = static_cast<double>(r.size());
  const double fit =
      w ? 0.5 * w->cwiseProduct(r).dot(r) / n : 0.5 * r.squaredNorm() / n;
  return fit + penalty(beta, alpha, lambda);
}

// Full solve of the weighted least squares subproblem. r must equal
// z - b0 - Xs * beta on entry.
bool cd_solve(const Eigen::MatrixXd& Xs, const Eigen::VectorXd* w,
              const Eigen::VectorXd& v, double w_sum, double alpha,
              double lambda, double& b0, Eigen::VectorXd& beta,
              Eigen::VectorXd& r, const EnetOptions& opts,
              std::vector<double>* trace) {
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double delta =
        cd_sweep(Xs, w, v, w_sum, alpha, lambda, b0, beta, r);
    if (trace) {
      trace->push_back(gaussian_objective(r, w, beta, alpha, lambda));
    }
    if (delta < opts.tol) return true;
  }
  return false;
}

double binomial_objective(const Eigen::VectorXd& eta, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& beta, double alpha,
                          double lambda) {
  const double n = static_cast<double>(y.size());
  double nll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    nll += softplus(eta[i]) - y[i] * eta[i];
  }
  return nll / n + penalty(beta, alpha, lambda);
}

struct SolveState {
  double b0 = 0.0;
  Eigen::VectorXd beta;
  bool converged = true;
};

SolveState solve_gaussian(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& y,
                          double alpha, double lambda, const EnetOptions& opts,
                          Eigen::VectorXd warm_beta, double warm_b0,
                          std::vector<double>* trace) {
  const double n = static_cast<double>(Xs.rows());
  SolveState st;
  st.b0 = warm_b0;
  st.beta = std::move(warm_beta);
  Eigen::VectorXd v(Xs.cols());
  for (Eigen::Index j = 0; j < Xs.cols(); ++j) {
    v[j] = Xs.col(j).squaredNorm() / n;
  }
  Eigen::VectorXd r = y - Eigen::VectorXd::Constant(y.size(), st.b0) -
                      Xs * st.beta;
  st.converged = cd_solve(Xs, nullptr, v, n, alpha, lambda, st.b0, st.beta, r,
                          opts, trace);
  return st;
}

SolveState solve_binomial(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& y,
                          double alpha, double lambda, const EnetOptions& opts,
                          Eigen::VectorXd warm_beta, double warm_b0) {
  const int n = static_cast<int>(Xs.rows());
  SolveState st;
  st.b0 = warm_b0;
  st.beta = std::move(warm_beta);

  double best_obj = std::numeric_limits<double>::infinity();
  double best_b0 = st.b0;
  Eigen::VectorXd best_beta = st.beta;
  st.converged = false;

  Eigen::VectorXd eta(n), prob(n), w(n), z(n), v(Xs.cols()), r(n);
  for (int outer = 0; outer < opts.max_irls; ++outer) {
    eta = Eigen::VectorXd::Constant(n, st.b0) + Xs * st.beta;
    for (int i = 0; i < n; ++i) {
      double p = sigmoid(std::min(30.0, std::max(-30.0, eta[i])));
      p = std::min(1.0 - 1e-5, std::max(1e-5, p));
      prob[i] = p;
      w[i] = p * (1.0 - p);
      z[i] = eta[i] + (y[i] - p) / w[i];
    }
    const double w_sum = w.sum();
    for (Eigen::Index j = 0; j < Xs.cols(); ++j) {
      v[j] = Xs.col(j).cwiseProduct(w).dot(Xs.col(j)) / n;
    }
    const double prev_b0 = st.b0;
    const Eigen::VectorXd prev_beta = st.beta;
    r = z - Eigen::VectorXd::Constant(n, st.b0) - Xs * st.beta;
    cd_solve(Xs, &w, v, w_sum, alpha, lambda, st.b0, st.beta, r, opts,
             nullptr);

    eta = Eigen::VectorXd::Constant(n, st.b0) + Xs * st.beta;
    const double obj = binomial_objective(eta, y, st.beta, alpha, lambda);
    if (obj < best_obj) {
      best_obj = obj;
      best_b0 = st.b0;
      best_beta = st.beta;
    }
    double change = std::abs(st.b0 - prev_b0);
    change = std::max(change, (st.beta - prev_beta).cwiseAbs().maxCoeff());
    if (change < opts.tol) {
      st.converged = true;
      break;
    }
  }
  if (!st.converged) {
    st.b0 = best_b0;
    st.beta = best_beta;
  }
  return st;
}

void validate(const Dataset& train, const EnetConfig& cfg) {
  if (train.n_rows() < 2) {
    throw std::invalid_argument("elastic net: needs >= 2 rows");
  }
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("elastic net: alpha must lie in [0, 1]");
  }
  if (!(cfg.lambda >= 0.0)) {
    throw std::invalid_argument("elastic net: lambda must be >= 0");
  }
  if (train.response.kind == ResponseKind::Binary) {
    const double s = train.response.values.sum();
    if (s == 0.0 || s == static_cast<double>(train.n_rows())) {
      throw std::invalid_argument("elastic net: needs both classes present");
    }
  }
}

EnetModel finalize(const Standardized& s, const SolveState& st, bool classifier,
                   const EnetConfig& cfg) {
  EnetModel model;
  model.classifier = classifier;
  model.alpha = cfg.alpha;
  model.lambda = cfg.lambda;
  model.feature_mean = s.mean;
  model.feature_scale = s.scale;
  model.converged = st.converged;
  model.coefficients = st.beta.cwiseQuotient(s.scale);
  model.intercept = st.b0 - model.coefficients.dot(s.mean);
  return model;
}

}  // namespace

double soft_threshold(double z, double g) {
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

EnetModel enet_fit(const Dataset& train, const EnetConfig& cfg,
                   const EnetOptions& opts) {
  validate(train, cfg);
  const Standardized s = standardize(train.features);
  const Eigen::VectorXd& y = train.response.values;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(train.n_features());

  if (train.response.kind == ResponseKind::Binary) {
    const double p_bar = std::min(1.0 - 1e-5, std::max(1e-5, y.mean()));
    const SolveState st =
        solve_binomial(s.Xs, y, cfg.alpha, cfg.lambda, opts, zero,
                       std::log(p_bar / (1.0 - p_bar)));
    return finalize(s, st, true, cfg);
  }
  std::vector<double> trace;
  const SolveState st = solve_gaussian(s.Xs, y, cfg.alpha, cfg.lambda, opts,
                                       zero, y.mean(), &trace);
  EnetModel model = finalize(s, st, false, cfg);
  model.objective_trace = std::move(trace);
  return model;
}

double enet_lambda_max(const Dataset& train, double alpha) {
  if (train.n_rows() < 2) {
    throw std::invalid_argument("elastic net: needs >= 2 rows");
  }
  const Standardized s = standardize(train.features);
  const Eigen::VectorXd centered =
      train.response.values.array() - train.response.values.mean();
  const double n = static_cast<double>(train.n_rows());
  const double top = (s.Xs.transpose() * centered).cwiseAbs().maxCoeff() / n;
  return top / std::max(alpha, 0.001);
}

std::vector<double> default_lambda_path(double lambda_max, int count,
                                        double decades) {
  if (count < 1) throw std::invalid_argument("lambda path: count must be >= 1");
  const double top = std::max(lambda_max, 1e-10);
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = top;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[i] = top * std::pow(10.0, -decades * i / (count - 1));
  }
  return out;
}

EnetPath enet_fit_path(const Dataset& train, double alpha,
                       const std::vector<double>& lambdas,
                       const EnetOptions& opts) {
  validate(train, EnetConfig{alpha, 0.0});
  if (lambdas.empty()) throw std::invalid_argument("lambda path is empty");
  const Standardized s = standardize(train.features);
  const Eigen::VectorXd& y = train.response.values;
  const bool classifier = train.response.kind == ResponseKind::Binary;

  EnetPath path;
  path.lambdas = lambdas;
  path.coefficients.resize(train.n_features(),
                           static_cast<Eigen::Index>(lambdas.size()));
  path.intercepts.resize(static_cast<Eigen::Index>(lambdas.size()));

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(train.n_features());
  double b0;
  if (classifier) {
    const double p_bar = std::min(1.0 - 1e-5, std::max(1e-5, y.mean()));
    b0 = std::log(p_bar / (1.0 - p_bar));
  } else {
    b0 = y.mean();
  }

  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    const SolveState st =
        classifier
            ? solve_binomial(s.Xs, y, alpha, lambdas[l], opts, beta, b0)
            : solve_gaussian(s.Xs, y, alpha, lambdas[l], opts, beta, b0,
                             nullptr);
    beta = st.beta;
    b0 = st.b0;
    const Eigen::VectorXd orig = beta.cwiseQuotient(s.scale);
    path.coefficients.col(static_cast<Eigen::Index>(l)) = orig;
    path.intercepts[static_cast<Eigen::Index>(l)] = b0 - orig.dot(s.mean);
  }
  return path;
}

Eigen::VectorXd EnetModel::linear_predictor(const Eigen::MatrixXd& X) const {
  if (X.cols() != coefficients.size()) {
    throw std::invalid_argument("elastic net predict: feature count mismatch");
  }
  return (X * coefficients).array() + intercept;
}

nlohmann::json EnetModel::to_json() const {
  nlohmann::json j;
  j["kind"] = classifier ? "classifier" : "regressor";
  j["alpha"] = alpha;
  j["lambda"] = lambda;
  j["intercept"] = intercept;
  j["converged"] = converged;
  j["coefficients"] = std::vector<double>(
      coefficients.data(), coefficients.data() + coefficients.size());
  j["feature_mean"] = std::vector<double>(
      feature_mean.data(), feature_mean.data() + feature_mean.size());
  j["feature_scale"] = std::vector<double>(
      feature_scale.data(), feature_scale.data() + feature_scale.size());
  return j;
}

EnetModel EnetModel::from_json(const nlohmann::json& j) {
  EnetModel m;
  m.classifier = j.at("kind").get<std::string>() == "classifier";
  m.alpha = j.at("alpha").get<double>();
  m.lambda = j.at("lambda").get<double>();
  m.intercept = j.at("intercept").get<double>();
  m.converged = j.at("converged").get<bool>();
  const auto load = [&j](const char* key) {
    const auto v = j.at(key).get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                             static_cast<Eigen::Index>(v.size()))
        .eval();
  };
  m.coefficients = load("coefficients");
  m.feature_mean = load("feature_mean");
  m.feature_scale = load("feature_scale");
  return m;
}

}  // namespace autotune
