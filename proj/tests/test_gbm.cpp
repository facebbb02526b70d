#include <doctest.h>

#include <cmath>

#include "autotune/gbm.hpp"
#include "autotune/metrics.hpp"
#include "testutil.hpp"

using namespace autotune;
using testutil::binary_data;
using testutil::blob_data;
using testutil::gaussian_matrix;
using testutil::regression_data;

TEST_CASE("one regression round is the mean plus a shrunk tree") {
  Rng gen(21);
  const Eigen::MatrixXd X = gaussian_matrix(gen, 40, 2);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) y[i] = std::cos(X(i, 0)) + gen.normal();
  const Dataset data = regression_data(X, y);

  const GbmModel model = gbm_fit(data, {1, 3, 0.37, 2});

  RegressionTree tree;
  tree.fit(X, Eigen::VectorXd(y.array() - y.mean()),
           Eigen::VectorXd::Ones(40), {3, 2});
  const Eigen::VectorXd expected =
      y.mean() + 0.37 * tree.predict(X).array();
  CHECK(model.f0 == doctest::Approx(y.mean()).epsilon(1e-12));
  CHECK((model.raw_scores(X) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("regression training loss never increases across rounds") {
  Rng gen(77);
  for (int rep = 0; rep < 5; ++rep) {
    const int n = 30 + static_cast<int>(gen.uniform_index(40));
    const Eigen::MatrixXd X = gaussian_matrix(gen, n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y[i] = X(i, 0) * X(i, 1) + 0.5 * gen.normal();
    }
    const GbmModel model = gbm_fit(regression_data(X, y), {60, 3, 0.2, 3});
    REQUIRE(model.train_loss.size() == 60);
    for (std::size_t r = 1; r < model.train_loss.size(); ++r) {
      CHECK(model.train_loss[r] <= model.train_loss[r - 1] + 1e-12);
    }
    CHECK(model.train_loss.back() ==
          doctest::Approx((model.raw_scores(X) - y).squaredNorm() / n)
              .epsilon(1e-9));
  }
}

TEST_CASE("enough depth and rounds drive the training error near zero") {
  Rng gen(13);
  const Eigen::MatrixXd X = gaussian_matrix(gen, 50, 2);
  Eigen::VectorXd y(50);
  for (int i = 0; i < 50; ++i) y[i] = X(i, 0) - X(i, 1);
  const GbmModel model = gbm_fit(regression_data(X, y), {300, 4, 0.5, 1});
  CHECK(rmse(y, model.raw_scores(X)) < 1e-2);
}

TEST_CASE("classification starts from the log odds and separates blobs") {
  Rng gen(5150);
  const Dataset data = blob_data(gen, 60, 2, 6.0);
  const GbmModel model = gbm_fit(data, {40, 2, 0.3, 5});

  const double p1 = data.response.values.mean();
  CHECK(model.classifier);
  CHECK(model.f0 == doctest::Approx(std::log(p1 / (1.0 - p1))).epsilon(1e-12));

  const Eigen::VectorXd raw = model.raw_scores(data.features);
  for (int i = 0; i < 60; ++i) {
    CHECK((raw[i] >= 0.0) == (data.response.values[i] == 1.0));
  }
  for (std::size_t r = 1; r < model.train_loss.size(); ++r) {
    CHECK(model.train_loss[r] <= model.train_loss[r - 1] + 1e-12);
  }
}

TEST_CASE("boosted stumps of depth two learn xor") {
  Eigen::MatrixXd X(40, 2);
  Eigen::VectorXd y(40);
  Rng gen(9);
  for (int i = 0; i < 40; ++i) {
    X(i, 0) = static_cast<double>(i % 2);
    X(i, 1) = static_cast<double>((i / 2) % 2);
    y[i] = X(i, 0) != X(i, 1) ? 1.0 : 0.0;
    X(i, 0) += 0.01 * gen.normal();
    X(i, 1) += 0.01 * gen.normal();
  }
  const GbmModel model = gbm_fit(binary_data(X, y), {60, 2, 0.3, 1});
  const Eigen::VectorXd raw = model.raw_scores(X);
  for (int i = 0; i < 40; ++i) {
    CHECK((raw[i] >= 0.0) == (y[i] == 1.0));
  }
}

TEST_CASE("min_node at the sample size forces a constant model") {
  Rng gen(31);
  const Eigen::MatrixXd X = gaussian_matrix(gen, 25, 2);
  Eigen::VectorXd y(25);
  for (int i = 0; i < 25; ++i) y[i] = gen.normal();
  const GbmModel model = gbm_fit(regression_data(X, y), {20, 3, 0.1, 25});
  const Eigen::VectorXd raw = model.raw_scores(X);
  for (int i = 0; i < 25; ++i) {
    CHECK(raw[i] == doctest::Approx(y.mean()).epsilon(1e-12));
  }
}

TEST_CASE("refitting with the same config reproduces the scores") {
  Rng gen(55);
  const Dataset data = blob_data(gen, 50, 3, 3.0);
  const GbmModel a = gbm_fit(data, {30, 3, 0.1, 5});
  const GbmModel b = gbm_fit(data, {30, 3, 0.1, 5});
  CHECK(a.raw_scores(data.features) == b.raw_scores(data.features));
}

TEST_CASE("invalid boosting configs are rejected") {
  Rng gen(2);
  const Dataset data = blob_data(gen, 20, 2, 3.0);
  CHECK_THROWS_AS(gbm_fit(data, {0, 3, 0.1, 5}), std::invalid_argument);
  CHECK_THROWS_AS(gbm_fit(data, {10, 0, 0.1, 5}), std::invalid_argument);
  CHECK_THROWS_AS(gbm_fit(data, {10, 3, 0.0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(gbm_fit(data, {10, 3, 1.5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(gbm_fit(data, {10, 3, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(gbm_fit(data, {10, 3, 0.1, 21}), std::invalid_argument);

  Dataset one_class = data;
  one_class.response.values.setZero();
  CHECK_THROWS_AS(gbm_fit(one_class, {10, 3, 0.1, 5}), std::invalid_argument);
}
