#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "autotune/dataset.hpp"
#include "autotune/metrics.hpp"
#include "autotune/objective.hpp"
#include "autotune/optimize.hpp"

namespace autotune {

struct Method {
  LearnerKind learner = LearnerKind::Svm;
  OptimizerKind optimizer = OptimizerKind::HookeJeeves;
  EvalStrategy strategy = FastHoldout{0.5};

  // e.g. "svm_hj_fast0.5" or "en_grid_cv10"
  std::string label() const;
};

struct TrialRecord {
  std::string dataset;
  Method method;
  int trial_index = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  std::vector<std::pair<std::string, double>> best_config;
  double best_loss = 0.0;
  double tune_seconds = 0.0;
  int n_evals = 0;
  std::vector<std::pair<MetricKind, double>> test_metrics;
};

struct AggregateRow {
  std::string dataset;
  std::string method;
  MetricKind metric = MetricKind::Accuracy;
  double mean_value = 0.0;
  double mean_seconds = 0.0;
  int n_trials = 0;  // successful trials included in the means
  int n_failed = 0;
};

// Seeds for the three random draws inside one trial, all derived from
// base_seed + trial_index so every method sees identical splits.
struct TrialSeeds {
  std::uint64_t split;
  std::uint64_t resample;
  std::uint64_t search;
};
TrialSeeds trial_seeds(std::uint64_t base_seed, int trial_index);

struct NamedDataset {
  std::string name;
  Dataset data;
};

struct BenchReport {
  std::uint64_t base_seed = 0;
  int trials = 0;
  std::vector<TrialRecord> records;

  // Per (dataset, method) means over the successful trials, one row per
  // reported metric, deterministically ordered.
  std::vector<AggregateRow> aggregates() const;
};

// One tuning run: split off a test part, tune on the training part only,
// refit the winning config on the whole training part, score on the test
// part. Test rows never reach the tuner. Throws on invalid method
// combinations; data-driven failures come back as a failed record.
TrialRecord run_trial(const NamedDataset& dataset, const Method& method,
                      std::uint64_t base_seed, int trial_index,
                      const TuneSettings& settings = {},
                      double train_proportion = 0.75);

BenchReport run_benchmark(const std::vector<NamedDataset>& datasets,
                          const std::vector<Method>& methods, int trials,
                          std::uint64_t base_seed,
                          const TuneSettings& settings = {}, int jobs = 1,
                          double train_proportion = 0.75);

// svm, gbm, elastic net (plus adaboost for binary responses) crossed with
// both search methods and both loss strategies.
std::vector<Method> compare_method_set(ResponseKind kind, int cv_folds = 10,
                                       double fast_fraction = 0.5);

BenchReport compare_models(const NamedDataset& dataset, int trials,
                           std::uint64_t base_seed,
                           const TuneSettings& settings = {}, int jobs = 1);

nlohmann::json report_to_json(const BenchReport& report);
BenchReport report_from_json(const nlohmann::json& j);

// dataset,method,metric,mean_value,mean_seconds,n_trials with one row per
// dataset and method, carrying the primary metric.
std::string report_to_csv(const BenchReport& report);

}  // namespace autotune
