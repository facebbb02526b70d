#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "autotune/rng.hpp"
#include "autotune/tree.hpp"

using namespace autotune;

namespace {

Eigen::VectorXd ones(Eigen::Index n) { return Eigen::VectorXd::Ones(n); }

double sse_of(const RegressionTree& tree, const Eigen::MatrixXd& X,
              const Eigen::VectorXd& y) {
  return (tree.predict(X) - y).squaredNorm();
}

// Exhaustive single-split search straight from the definition: try every
// midpoint on every feature and measure the summed squared error around the
// two child means.
double best_stump_sse(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      int min_node) {
  const Eigen::Index n = X.rows();
  const double mean = y.mean();
  double best = (y.array() - mean).square().sum();
  for (Eigen::Index f = 0; f < X.cols(); ++f) {
    std::vector<double> values(X.col(f).data(), X.col(f).data() + n);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      const double thr = (values[v] + values[v + 1]) / 2.0;
      double sl = 0.0, sr = 0.0;
      int nl = 0, nr = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (X(i, f) <= thr) {
          sl += y[i];
          ++nl;
        } else {
          sr += y[i];
          ++nr;
        }
      }
      if (nl < min_node || nr < min_node) continue;
      const double ml = sl / nl, mr = sr / nr;
      double sse = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double m = X(i, f) <= thr ? ml : mr;
        sse += (y[i] - m) * (y[i] - m);
      }
      best = std::min(best, sse);
    }
  }
  return best;
}

Eigen::MatrixXd random_matrix(Rng& gen, int n, int p, int grid = 0) {
  Eigen::MatrixXd X(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      double v = gen.uniform(-3.0, 3.0);
      if (grid > 0) v = std::round(v * grid) / grid;
      X(i, j) = v;
    }
  }
  return X;
}

}  // namespace

TEST_CASE("stump splits a step function exactly") {
  Eigen::MatrixXd X(4, 1);
  X << 1, 2, 3, 4;
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 0, 0, 1, 1).finished();
  RegressionTree tree;
  tree.fit(X, y, ones(4), {1, 1});

  REQUIRE(tree.nodes().size() == 3);
  CHECK(tree.nodes()[0].feature == 0);
  CHECK(tree.nodes()[0].threshold == doctest::Approx(2.5));
  CHECK(tree.predict(X).isApprox(y));
}

TEST_CASE("stump matches the exhaustive split search") {
  Rng gen(811);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 10 + static_cast<int>(gen.uniform_index(30));
    const int p = 1 + static_cast<int>(gen.uniform_index(4));
    // A coarse value grid every other rep forces duplicate feature values.
    const Eigen::MatrixXd X = random_matrix(gen, n, p, rep % 2 ? 2 : 0);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = gen.uniform(-2.0, 2.0);

    RegressionTree tree;
    tree.fit(X, y, ones(n), {1, 1});
    CHECK(sse_of(tree, X, y) ==
          doctest::Approx(best_stump_sse(X, y, 1)).epsilon(1e-9));
  }
}

TEST_CASE("deeper trees never raise the training error") {
  Rng gen(97);
  const Eigen::MatrixXd X = random_matrix(gen, 60, 3);
  Eigen::VectorXd y(60);
  for (int i = 0; i < 60; ++i) {
    y[i] = std::sin(X(i, 0)) + 0.3 * X(i, 1) + 0.1 * gen.normal();
  }
  double prev = (y.array() - y.mean()).square().sum();
  for (int depth = 1; depth <= 8; ++depth) {
    RegressionTree tree;
    tree.fit(X, y, ones(60), {depth, 1});
    const double sse = sse_of(tree, X, y);
    CHECK(sse <= prev + 1e-9);
    prev = sse;
  }
}

TEST_CASE("min_node bounds every leaf's occupancy") {
  Rng gen(5);
  const Eigen::MatrixXd X = random_matrix(gen, 50, 2);
  Eigen::VectorXd y(50);
  for (int i = 0; i < 50; ++i) y[i] = gen.normal();

  const int min_node = 7;
  RegressionTree tree;
  tree.fit(X, y, ones(50), {6, min_node});

  std::map<int, int> occupancy;
  for (int i = 0; i < 50; ++i) ++occupancy[tree.leaf_for(X, i)];
  for (const auto& [leaf, count] : occupancy) {
    CHECK(tree.nodes()[leaf].is_leaf());
    CHECK(count >= min_node);
  }
}

TEST_CASE("min_node larger than half the data forbids any split") {
  Eigen::MatrixXd X(6, 1);
  X << 1, 2, 3, 4, 5, 6;
  const Eigen::VectorXd y = (Eigen::VectorXd(6) << 1, 2, 3, 4, 5, 6).finished();
  RegressionTree tree;
  tree.fit(X, y, ones(6), {4, 4});
  REQUIRE(tree.nodes().size() == 1);
  CHECK(tree.nodes()[0].value == doctest::Approx(3.5));
}

TEST_CASE("row weights act like row repetition") {
  Eigen::MatrixXd X(4, 1), Xrep(6, 1);
  X << 1, 2, 3, 4;
  Xrep << 1, 1, 2, 3, 4, 4;
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 3, 1, 4, 1).finished();
  const Eigen::VectorXd yrep =
      (Eigen::VectorXd(6) << 3, 3, 1, 4, 1, 1).finished();
  const Eigen::VectorXd w = (Eigen::VectorXd(4) << 2, 1, 1, 2).finished();

  RegressionTree weighted, repeated;
  weighted.fit(X, y, w, {3, 1});
  repeated.fit(Xrep, yrep, ones(6), {3, 1});

  Eigen::MatrixXd probe(9, 1);
  probe << 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5;
  CHECK(weighted.predict(probe).isApprox(repeated.predict(probe), 1e-12));
}

TEST_CASE("xor needs the zero-gain root split and gets it") {
  Eigen::MatrixXd X(4, 2);
  X << 0, 0, 0, 1, 1, 0, 1, 1;
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 0, 1, 1, 0).finished();
  RegressionTree tree;
  tree.fit(X, y, ones(4), {2, 1});
  CHECK((tree.predict(X) - y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a constant response makes a single leaf") {
  Rng gen(12);
  const Eigen::MatrixXd X = random_matrix(gen, 20, 3);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 2.5);
  RegressionTree tree;
  tree.fit(X, y, ones(20), {6, 1});
  REQUIRE(tree.nodes().size() == 1);
  CHECK(tree.nodes()[0].value == doctest::Approx(2.5));
}

TEST_CASE("presorted fit reproduces the plain fit") {
  Rng gen(33);
  const Eigen::MatrixXd X = random_matrix(gen, 40, 3, 2);
  Eigen::VectorXd y(40), w(40);
  for (int i = 0; i < 40; ++i) {
    y[i] = gen.normal();
    w[i] = gen.uniform(0.5, 2.0);
  }
  const auto sorted = presort_columns(X);

  RegressionTree plain, presorted;
  plain.fit(X, y, w, {4, 2});
  presorted.fit_presorted(X, y, w, {4, 2}, sorted);

  REQUIRE(plain.nodes().size() == presorted.nodes().size());
  for (std::size_t i = 0; i < plain.nodes().size(); ++i) {
    CHECK(plain.nodes()[i].feature == presorted.nodes()[i].feature);
    CHECK(plain.nodes()[i].threshold == presorted.nodes()[i].threshold);
    CHECK(plain.nodes()[i].value == presorted.nodes()[i].value);
  }
}

TEST_CASE("equal-score ties go to the lowest feature index") {
  // Feature 1 duplicates feature 0, so every split score appears twice.
  Eigen::MatrixXd X(4, 2);
  X << 1, 1, 2, 2, 3, 3, 4, 4;
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 0, 0, 1, 1).finished();
  RegressionTree tree;
  tree.fit(X, y, ones(4), {1, 1});
  CHECK(tree.nodes()[0].feature == 0);
}

TEST_CASE("predict agrees with predict_row and leaf_for") {
  Rng gen(71);
  const Eigen::MatrixXd X = random_matrix(gen, 30, 2);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) y[i] = gen.normal();
  RegressionTree tree;
  tree.fit(X, y, ones(30), {4, 2});

  const Eigen::VectorXd pred = tree.predict(X);
  for (int i = 0; i < 30; ++i) {
    CHECK(pred[i] == tree.predict_row(X, i));
    CHECK(pred[i] == tree.nodes()[tree.leaf_for(X, i)].value);
  }
}

TEST_CASE("sorted column order is ascending with stable duplicates") {
  Eigen::MatrixXd X(5, 2);
  X << 2, 1, 1, 1, 2, 1, 0, 1, 1, 1;
  const auto sorted = presort_columns(X);
  REQUIRE(sorted.size() == 2);
  CHECK(sorted[0] == std::vector<int>{3, 1, 4, 0, 2});
  CHECK(sorted[1] == std::vector<int>{0, 1, 2, 3, 4});
}
