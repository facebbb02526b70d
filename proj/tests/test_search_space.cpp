#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "autotune/search_space.hpp"

using namespace autotune;

TEST_CASE("half-way rounding goes to the smaller integer") {
  CHECK(round_half_down(2.5) == 2.0);
  CHECK(round_half_down(7.5) == 7.0);
  CHECK(round_half_down(2.51) == 3.0);
  CHECK(round_half_down(2.49) == 2.0);
  CHECK(round_half_down(3.0) == 3.0);
  CHECK(round_half_down(-0.5) == -1.0);
}

TEST_CASE("each learner exposes its stock dimensions") {
  const SearchSpace svm_b = default_space(LearnerKind::Svm, ResponseKind::Binary);
  REQUIRE(svm_b.size() == 2);
  CHECK(svm_b.dims[0].name == "cost");
  CHECK(svm_b.dims[1].name == "gamma");

  const SearchSpace svm_c =
      default_space(LearnerKind::Svm, ResponseKind::Continuous);
  REQUIRE(svm_c.size() == 3);
  CHECK(svm_c.dims[2].name == "epsilon");

  const SearchSpace gbm = default_space(LearnerKind::Gbm, ResponseKind::Binary);
  REQUIRE(gbm.size() == 4);
  CHECK(gbm.dims[0].name == "n_trees");
  CHECK(gbm.dims[1].name == "depth");
  CHECK(gbm.dims[2].name == "shrinkage");
  CHECK(gbm.dims[3].name == "min_node");

  const SearchSpace ada =
      default_space(LearnerKind::AdaBoost, ResponseKind::Binary);
  REQUIRE(ada.size() == 3);
  CHECK(ada.dims[0].name == "n_iters");

  const SearchSpace en =
      default_space(LearnerKind::ElasticNet, ResponseKind::Continuous);
  REQUIRE(en.size() == 2);
  CHECK(en.dims[0].name == "alpha");
  CHECK(en.dims[1].name == "lambda");
}

TEST_CASE("svm bounds cover the stock power-of-two grid") {
  const SearchSpace space = default_space(LearnerKind::Svm, ResponseKind::Binary);
  const Dimension& cost = space.dims[0];
  CHECK(cost.scale == ScaleKind::Log2);
  CHECK(cost.lower == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-12));
  CHECK(cost.upper == doctest::Approx(std::pow(2.0, 15)).epsilon(1e-12));
  CHECK(cost.scaled_lower() == doctest::Approx(-5.0));
  CHECK(cost.scaled_upper() == doctest::Approx(15.0));
  CHECK(cost.scaled_width() == doctest::Approx(20.0));

  const Dimension& gamma = space.dims[1];
  CHECK(gamma.scaled_lower() == doctest::Approx(-15.0));
  CHECK(gamma.scaled_upper() == doctest::Approx(3.0));
}

TEST_CASE("scaled coordinates invert through the natural ones") {
  const SearchSpace space =
      default_space(LearnerKind::ElasticNet, ResponseKind::Continuous);
  const Dimension& lambda = space.dims[1];
  CHECK(lambda.scale == ScaleKind::Log10);
  CHECK(lambda.to_scaled(1e-4) == doctest::Approx(-4.0));
  CHECK(lambda.to_scaled(100.0) == doctest::Approx(2.0));
  CHECK(lambda.from_scaled(-1.0) == doctest::Approx(0.1).epsilon(1e-12));

  const Dimension& alpha = space.dims[0];
  CHECK(alpha.scale == ScaleKind::Linear);
  CHECK(alpha.from_scaled(0.35) == doctest::Approx(0.35));
}

TEST_CASE("integral dimensions round and clamp") {
  const SearchSpace space = default_space(LearnerKind::Gbm, ResponseKind::Binary);
  const Dimension& n_trees = space.dims[0];
  REQUIRE(n_trees.integral);
  CHECK(n_trees.from_scaled(107.2) == 107.0);
  CHECK(n_trees.from_scaled(107.5) == 107.0);
  CHECK(n_trees.from_scaled(107.9) == 108.0);
  CHECK(n_trees.from_scaled(-50.0) == 50.0);
  CHECK(n_trees.from_scaled(1e9) == 3000.0);

  const Dimension& depth = space.dims[1];
  CHECK(depth.from_scaled(2.5) == 2.0);
  CHECK(depth.from_scaled(0.2) == 1.0);
  CHECK(depth.from_scaled(99.0) == 10.0);
}

TEST_CASE("the center point and clamping behave") {
  const SearchSpace space = default_space(LearnerKind::Svm, ResponseKind::Binary);
  const Eigen::VectorXd center = space.center_scaled();
  REQUIRE(center.size() == 2);
  CHECK(center[0] == doctest::Approx(5.0));    // midpoint of [-5, 15]
  CHECK(center[1] == doctest::Approx(-6.0));   // midpoint of [-15, 3]

  Eigen::VectorXd wild(2);
  wild << 100.0, -100.0;
  const Eigen::VectorXd clamped = space.clamp_scaled(wild);
  CHECK(clamped[0] == doctest::Approx(15.0));
  CHECK(clamped[1] == doctest::Approx(-15.0));

  const std::vector<double> naturals = space.naturals(center);
  REQUIRE(naturals.size() == 2);
  CHECK(naturals[0] == doctest::Approx(32.0));           // 2^5
  CHECK(naturals[1] == doctest::Approx(std::pow(2.0, -6)));
}

TEST_CASE("gbm shrinkage spans three decades on a log scale") {
  const SearchSpace space = default_space(LearnerKind::Gbm, ResponseKind::Binary);
  const Dimension& shrink = space.dims[2];
  CHECK(shrink.scale == ScaleKind::Log10);
  CHECK(shrink.lower == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(shrink.upper == doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));
  CHECK_FALSE(shrink.integral);
}
