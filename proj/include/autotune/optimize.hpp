#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "autotune/objective.hpp"
#include "autotune/search_space.hpp"

namespace autotune {

enum class OptimizerKind { HookeJeeves, Genetic, AlphaGrid };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& s);

struct TraceEntry {
  Eigen::VectorXd scaled;
  double loss = 0.0;
};

struct TuneResult {
  Eigen::VectorXd best_scaled;
  std::vector<double> best_naturals;
  double best_loss = std::numeric_limits<double>::infinity();
  int n_evals = 0;
  double tune_seconds = 0.0;
  std::vector<TraceEntry> trace;  // every evaluation, in order
};

using LossFn = std::function<double(const Eigen::VectorXd&)>;

struct HookeJeevesOptions {
  double step_fraction = 0.25;  // initial step as a fraction of width
  double tol = 1e-3;            // stop when all steps shrink below tol * width
  int budget = 500;             // maximum evaluations
};

struct GeneticOptions {
  int population = 20;
  int generations = 25;
  double blend_alpha = 0.5;      // blend crossover expansion factor
  double mutation_rate = 0.1;    // per-gene probability
  double mutation_sigma = 0.1;   // gaussian sd as a fraction of width
  std::uint64_t seed = 0;
};

// Pattern search over the scaled box: exploratory probes of +-step per
// dimension accepting the first improvement, then a doubling pattern move
// while sweeps keep paying off, halving all steps when a sweep fails.
TuneResult hooke_jeeves(const LossFn& loss, const SearchSpace& space,
                        const Eigen::VectorXd& init_scaled,
                        const HookeJeevesOptions& opts = {});

// Same, starting from the center of the box.
TuneResult hooke_jeeves(const LossFn& loss, const SearchSpace& space,
                        const HookeJeevesOptions& opts = {});

// Real-coded genetic search: uniform initialization, size-2 tournaments,
// blend crossover clamped to the box, per-gene gaussian mutation, one elite
// carried per generation, best-ever returned.
TuneResult genetic_search(const LossFn& loss, const SearchSpace& space,
                          const GeneticOptions& opts = {});

enum class LambdaRule { MinLambda, OneSE };

struct TuneSettings {
  HookeJeevesOptions hj;
  GeneticOptions ga;
  LambdaRule lambda_rule = LambdaRule::MinLambda;
  bool keep_trace = true;
};

// Runs the chosen optimizer against the objective and stamps timing. The
// seed drives the genetic search; the alpha grid reuses the objective's
// folds.
TuneResult tune(const Objective& objective, OptimizerKind optimizer,
                const TuneSettings& settings, std::uint64_t seed);

}  // namespace autotune
