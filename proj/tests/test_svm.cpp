#include <doctest.h>

#include <cmath>

#include "autotune/metrics.hpp"
#include "autotune/svm.hpp"
#include "testutil.hpp"

using namespace autotune;
using testutil::binary_data;
using testutil::blob_data;
using testutil::regression_data;

namespace {

// Points at -1 and +1 with opposite labels. Standardization leaves them in
// place, so the dual has the closed form alpha = 1 / (1 - K12) with
// K12 = exp(-4 gamma), the bias is 0 by symmetry, and the decision values
// land exactly on the canonical margins +-1.
Dataset two_points() {
  Eigen::MatrixXd X(2, 1);
  X << -1, 1;
  return binary_data(X, (Eigen::VectorXd(2) << 0, 1).finished());
}

}  // namespace

TEST_CASE("two point classification matches the closed-form dual") {
  const double gamma = 1.0;
  const double k12 = std::exp(-4.0 * gamma);
  const double alpha = 1.0 / (1.0 - k12);

  const SvmModel model = svm_fit(two_points(), {10.0, gamma, 0.1});

  REQUIRE(model.support_vectors.rows() == 2);
  CHECK(model.dual_coefs[0] == doctest::Approx(-alpha).epsilon(1e-9));
  CHECK(model.dual_coefs[1] == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(model.bias == doctest::Approx(0.0));
  CHECK(model.kkt_gap <= 1e-3);

  Eigen::MatrixXd probe(3, 1);
  probe << -1, 0, 1;
  const Eigen::VectorXd f = model.decision_values(probe);
  CHECK(f[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(f[1] == doctest::Approx(0.0));
  CHECK(f[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a small cost clamps both duals at the box") {
  const SvmModel model = svm_fit(two_points(), {0.5, 1.0, 0.1});
  REQUIRE(model.dual_coefs.size() == 2);
  CHECK(model.dual_coefs[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(model.dual_coefs[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(model.bias == doctest::Approx(0.0));
}

TEST_CASE("xor becomes separable through the kernel") {
  Eigen::MatrixXd X(4, 2);
  X << 0, 0, 0, 1, 1, 0, 1, 1;
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 0, 1, 1, 0).finished();
  const SvmModel model = svm_fit(binary_data(X, y), {100.0, 2.0, 0.1});

  const Eigen::VectorXd f = model.decision_values(X);
  for (int i = 0; i < 4; ++i) {
    CHECK((f[i] >= 0.0) == (y[i] == 1.0));
  }
}

TEST_CASE("blob duals satisfy the box and equality constraints") {
  Rng gen(808);
  const double cost = 4.0;
  const Dataset data = blob_data(gen, 60, 3, 4.0);
  const SvmModel model = svm_fit(data, {cost, 0.5, 0.1});

  CHECK(model.dual_coefs.cwiseAbs().maxCoeff() <= cost + 1e-12);
  CHECK(std::abs(model.dual_coefs.sum()) < 1e-9);
  CHECK(model.kkt_gap <= 1e-3);
  CHECK(model.iterations < 200000);

  const Eigen::VectorXd f = model.decision_values(data.features);
  Eigen::VectorXd labels(60);
  for (int i = 0; i < 60; ++i) labels[i] = f[i] >= 0.0 ? 1.0 : 0.0;
  CHECK(accuracy(data.response.values, labels) == 1.0);
}

TEST_CASE("two point regression sits on the tube boundary") {
  Eigen::MatrixXd X(2, 1);
  X << -1, 1;
  const Dataset data =
      regression_data(X, (Eigen::VectorXd(2) << -1, 1).finished());
  const double k12 = std::exp(-4.0);
  const double beta = 0.9 / (1.0 - k12);

  const SvmModel model = svr_fit(data, {10.0, 1.0, 0.1});

  CHECK_FALSE(model.classifier);
  REQUIRE(model.dual_coefs.size() == 2);
  CHECK(model.dual_coefs[0] == doctest::Approx(-beta).epsilon(5e-3));
  CHECK(model.dual_coefs[1] == doctest::Approx(beta).epsilon(5e-3));
  CHECK(std::abs(model.bias) < 5e-3);

  const Eigen::VectorXd f = model.decision_values(X);
  CHECK(f[0] == doctest::Approx(-0.9).epsilon(5e-3));
  CHECK(f[1] == doctest::Approx(0.9).epsilon(5e-3));
}

TEST_CASE("a constant response needs no support vectors") {
  Rng gen(44);
  const Eigen::MatrixXd X = testutil::gaussian_matrix(gen, 15, 2);
  const Dataset data =
      regression_data(X, Eigen::VectorXd::Constant(15, 7.25));
  const SvmModel model = svr_fit(data, {1.0, 0.5, 0.1});

  CHECK(model.support_vectors.rows() == 0);
  const Eigen::VectorXd f = model.decision_values(X);
  for (int i = 0; i < 15; ++i) {
    CHECK(f[i] == doctest::Approx(7.25).epsilon(1e-12));
  }
}

TEST_CASE("a tube wider than the response collapses to the midrange") {
  Rng gen(91);
  const Eigen::MatrixXd X = testutil::gaussian_matrix(gen, 20, 2);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) y[i] = gen.uniform(0.0, 5.0);
  const SvmModel model = svr_fit(regression_data(X, y), {1.0, 0.5, 10.0});

  // Every bias keeping all residuals inside the tube is optimal; the solver
  // centers the slack, which lands on the midrange of y.
  const double midrange = (y.minCoeff() + y.maxCoeff()) / 2.0;
  const Eigen::VectorXd f = model.decision_values(X);
  CHECK(model.support_vectors.rows() == 0);
  for (int i = 0; i < 20; ++i) {
    CHECK(f[i] == doctest::Approx(midrange).epsilon(1e-9));
  }
}

TEST_CASE("a noiseless trend is tracked within the tube width") {
  Rng gen(17);
  Eigen::MatrixXd X(40, 1);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) {
    X(i, 0) = gen.uniform(-2.0, 2.0);
    y[i] = 2.0 * X(i, 0);
  }
  const Dataset data = regression_data(X, y);
  const SvmModel model = svr_fit(data, {100.0, 1.0, 0.1});

  const double sd = std::sqrt((y.array() - y.mean()).square().sum() / 40.0);
  CHECK(rmse(y, model.decision_values(X)) < 0.15 * sd);
}

TEST_CASE("regression predictions are invariant to response rescaling") {
  Rng gen(29);
  Eigen::MatrixXd X(30, 2);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) {
    X(i, 0) = gen.normal();
    X(i, 1) = gen.normal();
    y[i] = X(i, 0) + 0.2 * gen.normal();
  }
  const SvmModel small = svr_fit(regression_data(X, y), {10.0, 1.0, 0.1});
  const SvmModel big =
      svr_fit(regression_data(X, 1000.0 * y), {10.0, 1.0, 0.1});

  // The standardized problems agree only to rounding, and the solver stops
  // at a 1e-3 duality gap, so the match is at that resolution.
  const Eigen::VectorXd fs = small.decision_values(X);
  const Eigen::VectorXd fb = big.decision_values(X);
  const double spread = 1000.0 * (fs.maxCoeff() - fs.minCoeff());
  for (int i = 0; i < 30; ++i) {
    CHECK(std::abs(fb[i] - 1000.0 * fs[i]) < 5e-3 * spread);
  }
}

TEST_CASE("fits are deterministic") {
  Rng gen(3);
  const Dataset data = blob_data(gen, 50, 2, 2.0);
  const SvmModel a = svm_fit(data, {2.0, 0.3, 0.1});
  const SvmModel b = svm_fit(data, {2.0, 0.3, 0.1});
  CHECK(a.bias == b.bias);
  CHECK(a.dual_coefs == b.dual_coefs);
}

TEST_CASE("invalid inputs are rejected") {
  const Dataset data = two_points();
  CHECK_THROWS_AS(svm_fit(data, {0.0, 1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(svm_fit(data, {1.0, 0.0, 0.1}), std::invalid_argument);

  Dataset continuous = data;
  continuous.response.kind = ResponseKind::Continuous;
  CHECK_THROWS_AS(svm_fit(continuous, {1.0, 1.0, 0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(svr_fit(data, {1.0, 1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(svr_fit(continuous, {1.0, 1.0, -0.5}),
                  std::invalid_argument);

  Dataset one_class = data;
  one_class.response.values.setZero();
  CHECK_THROWS_AS(svm_fit(one_class, {1.0, 1.0, 0.1}), std::invalid_argument);

  const SvmModel model = svm_fit(data, {1.0, 1.0, 0.1});
  CHECK_THROWS_AS(model.decision_values(Eigen::MatrixXd::Zero(2, 3)),
                  std::invalid_argument);
}
