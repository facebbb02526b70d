#include <doctest.h>

#include <cmath>

#include "autotune/metrics.hpp"
#include "autotune/rng.hpp"

using namespace autotune;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Independent oracle: all positive/negative pairs, ties counted half.
double auc_brute(const Eigen::VectorXd& truth, const Eigen::VectorXd& scores) {
  double wins = 0.0;
  long pairs = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth[i] != 1.0) continue;
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      if (truth[j] != 0.0) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("accuracy on a mixed vector") {
  CHECK(accuracy(vec({0, 1, 1, 0}), vec({0, 1, 0, 0})) == 0.75);
  CHECK(accuracy(vec({0, 1}), vec({0, 1})) == 1.0);
  CHECK(accuracy(vec({0, 1}), vec({1, 0})) == 0.0);
}

TEST_CASE("auc on the reference example") {
  CHECK(auc(vec({1, 0, 1, 0}), vec({0.9, 0.8, 0.7, 0.2})) == 0.75);
}

TEST_CASE("auc with all scores tied is one half") {
  CHECK(auc(vec({1, 0, 1, 0, 0}), vec({3, 3, 3, 3, 3})) == 0.5);
}

TEST_CASE("auc matches the pairwise oracle on random data") {
  Rng gen(4242);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 5 + static_cast<int>(gen.uniform_index(40));
    Eigen::VectorXd truth(n), scores(n);
    int pos = 0;
    for (int i = 0; i < n; ++i) {
      truth[i] = gen.uniform01() < 0.4 ? 1.0 : 0.0;
      pos += truth[i] == 1.0;
      // coarse grid so ties actually occur
      scores[i] = std::floor(gen.uniform01() * 8.0) / 8.0;
    }
    if (pos == 0 || pos == n) continue;
    CHECK(auc(truth, scores) == doctest::Approx(auc_brute(truth, scores))
                                    .epsilon(1e-14));
  }
}

TEST_CASE("auc is invariant under monotone transforms of the scores") {
  const Eigen::VectorXd truth = vec({1, 0, 1, 0, 1, 0, 0, 1});
  const Eigen::VectorXd s = vec({0.1, 0.2, 0.8, 0.4, 0.4, 0.3, 0.9, 0.7});
  const double base = auc(truth, s);
  Eigen::VectorXd t1 = s.array().exp();
  Eigen::VectorXd t2 = 2.0 * s.array() + 7.0;
  CHECK(auc(truth, t1) == base);
  CHECK(auc(truth, t2) == base);
}

TEST_CASE("auc input validation") {
  CHECK_THROWS(auc(vec({1, 1}), vec({0.5, 0.6})));
  CHECK_THROWS(auc(vec({0, 0}), vec({0.5, 0.6})));
  CHECK_THROWS(auc(vec({0, 1}), vec({0.5})));
  CHECK_THROWS(auc(vec({0, 2}), vec({0.5, 0.6})));
}

TEST_CASE("regression error metrics on fixed pairs") {
  CHECK(rmse(vec({0, 0}), vec({3, 4})) ==
        doctest::Approx(3.5355339059327378).epsilon(1e-15));
  CHECK(mae(vec({0, 0}), vec({3, 4})) == 3.5);
  CHECK(mse(vec({0, 0}), vec({3, 4})) == 12.5);
  CHECK(rmse(vec({2}), vec({5})) == 3.0);
  CHECK(mae(vec({2}), vec({5})) == 3.0);
  CHECK(mse(vec({2}), vec({5})) == 9.0);
}

TEST_CASE("mse equals squared rmse") {
  Rng gen(7);
  Eigen::VectorXd a(25), b(25);
  for (int i = 0; i < 25; ++i) {
    a[i] = gen.normal();
    b[i] = gen.normal();
  }
  CHECK(mse(a, b) == doctest::Approx(rmse(a, b) * rmse(a, b)).epsilon(1e-14));
  CHECK(mae(a, b) <= rmse(a, b) + 1e-14);
}

TEST_CASE("log loss of a coin flip is ln 2") {
  CHECK(log_loss(vec({1, 0}), vec({0.5, 0.5})) ==
        doctest::Approx(0.6931471805599453).epsilon(1e-15));
}

TEST_CASE("log loss at the base rate is the bernoulli entropy") {
  Eigen::VectorXd truth(10);
  truth << 1, 1, 1, 0, 0, 0, 0, 0, 0, 0;
  Eigen::VectorXd probs = Eigen::VectorXd::Constant(10, 0.3);
  const double expected = -(0.3 * std::log(0.3) + 0.7 * std::log(0.7));
  CHECK(log_loss(truth, probs) == doctest::Approx(expected).epsilon(1e-15));

  // no constant probability does better than the base rate
  for (double p = 0.01; p < 1.0; p += 0.01) {
    const double loss = log_loss(truth, Eigen::VectorXd::Constant(10, p));
    CHECK(loss >= expected - 1e-12);
  }
}

TEST_CASE("log loss clips extreme probabilities") {
  const double loss = log_loss(vec({1}), vec({0.0}));
  CHECK(std::isfinite(loss));
  CHECK(loss == doctest::Approx(-std::log(1e-12)).epsilon(1e-9));
}

TEST_CASE("metric names round trip") {
  for (MetricKind m : {MetricKind::Accuracy, MetricKind::AUC, MetricKind::RMSE,
                       MetricKind::MAE, MetricKind::MSE, MetricKind::LogLoss}) {
    CHECK(metric_from_string(to_string(m)) == m);
  }
  CHECK_THROWS(metric_from_string("banana"));
  CHECK(higher_is_better(MetricKind::Accuracy));
  CHECK(higher_is_better(MetricKind::AUC));
  CHECK_FALSE(higher_is_better(MetricKind::RMSE));
  CHECK_FALSE(higher_is_better(MetricKind::LogLoss));
  CHECK(primary_metric(ResponseKind::Binary) == MetricKind::Accuracy);
  CHECK(primary_metric(ResponseKind::Continuous) == MetricKind::RMSE);
}
