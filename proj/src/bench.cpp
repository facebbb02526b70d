#include "autotune/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "autotune/model.hpp"
#include "autotune/rng.hpp"

namespace autotune {

namespace {

void validate_method(const Method& m, ResponseKind kind) {
  if (m.optimizer == OptimizerKind::AlphaGrid) {
    if (m.learner != LearnerKind::ElasticNet) {
      throw std::invalid_argument(
          "the alpha grid optimizer applies to the elastic net only");
    }
    if (!std::holds_alternative<CrossValidation>(m.strategy)) {
      throw std::invalid_argument(
          "the alpha grid optimizer needs cross validation");
    }
  }
  if (m.learner == LearnerKind::AdaBoost && kind != ResponseKind::Binary) {
    throw std::invalid_argument("adaboost applies to binary responses only");
  }
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

nlohmann::json strategy_to_json(const EvalStrategy& s) {
  nlohmann::json j;
  if (const auto* cv = std::get_if<CrossValidation>(&s)) {
    j["type"] = "cv";
    j["k"] = cv->k;
  } else {
    j["type"] = "fast";
    j["fraction"] = std::get<FastHoldout>(s).fraction;
  }
  return j;
}

EvalStrategy strategy_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "cv") return CrossValidation{j.at("k").get<int>()};
  if (type == "fast") return FastHoldout{j.at("fraction").get<double>()};
  throw std::invalid_argument("unknown strategy type '" + type + "'");
}

}  // namespace

std::string Method::label() const {
  return to_string(learner) + "_" + to_string(optimizer) + "_" +
         strategy_label(strategy);
}

TrialSeeds trial_seeds(std::uint64_t base_seed, int trial_index) {
  const Rng base(base_seed + static_cast<std::uint64_t>(trial_index));
  return {base.fork(1).seed(), base.fork(2).seed(), base.fork(3).seed()};
}

TrialRecord run_trial(const NamedDataset& dataset, const Method& method,
                      std::uint64_t base_seed, int trial_index,
                      const TuneSettings& settings, double train_proportion) {
  validate_method(method, dataset.data.response.kind);

  TrialRecord rec;
  rec.dataset = dataset.name;
  rec.method = method;
  rec.trial_index = trial_index;
  rec.seed = base_seed + static_cast<std::uint64_t>(trial_index);

  const TrialSeeds seeds = trial_seeds(base_seed, trial_index);
  const bool binary = dataset.data.response.kind == ResponseKind::Binary;
  try {
    const TrainTestSplit split =
        initial_split(dataset.data, train_proportion, binary, seeds.split);
    const Dataset train = dataset.data.subset(split.train_indices);
    const Dataset test = dataset.data.subset(split.test_indices);

    const Objective objective(train, method.learner, method.strategy,
                              seeds.resample);
    const TuneResult tuned =
        tune(objective, method.optimizer, settings, seeds.search);
    rec.tune_seconds = tuned.tune_seconds;
    rec.n_evals = tuned.n_evals;
    if (!std::isfinite(tuned.best_loss)) {
      rec.failed = true;
      rec.error = "no candidate evaluated to a finite loss";
      return rec;
    }
    rec.best_loss = tuned.best_loss;
    const auto& dims = objective.space().dims;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      rec.best_config.emplace_back(dims[d].name, tuned.best_naturals[d]);
    }

    const FittedModel refit =
        fit_model(train, objective.config_from(tuned.best_naturals));
    const Prediction pred = predict(refit, test.features);
    const Eigen::VectorXd& truth = test.response.values;
    if (binary) {
      rec.test_metrics.emplace_back(MetricKind::Accuracy,
                                    accuracy(truth, pred.values));
      rec.test_metrics.emplace_back(MetricKind::AUC, auc(truth, pred.scores));
    } else {
      rec.test_metrics.emplace_back(MetricKind::RMSE, rmse(truth, pred.values));
      rec.test_metrics.emplace_back(MetricKind::MAE, mae(truth, pred.values));
    }
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
    rec.test_metrics.clear();
  }
  return rec;
}

BenchReport run_benchmark(const std::vector<NamedDataset>& datasets,
                          const std::vector<Method>& methods, int trials,
                          std::uint64_t base_seed, const TuneSettings& settings,
                          int jobs, double train_proportion) {
  if (datasets.empty()) throw std::invalid_argument("no datasets given");
  if (methods.empty()) throw std::invalid_argument("no methods given");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (const auto& d : datasets) {
    for (const auto& m : methods) validate_method(m, d.data.response.kind);
  }

  struct Task {
    int dataset;
    int method;
    int trial;
  };
  std::vector<Task> tasks;
  for (int d = 0; d < static_cast<int>(datasets.size()); ++d) {
    for (int m = 0; m < static_cast<int>(methods.size()); ++m) {
      for (int t = 0; t < trials; ++t) tasks.push_back({d, m, t});
    }
  }

  BenchReport report;
  report.base_seed = base_seed;
  report.trials = trials;
  report.records.resize(tasks.size());

  const int workers =
      std::max(1, std::min(jobs, static_cast<int>(tasks.size())));
  auto run_task = [&](std::size_t i) {
    const Task& task = tasks[i];
    report.records[i] =
        run_trial(datasets[task.dataset], methods[task.method], base_seed,
                  task.trial, settings, train_proportion);
  };
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_task(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::sort(report.records.begin(), report.records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              const std::string la = a.method.label();
              const std::string lb = b.method.label();
              return std::tie(a.dataset, la, a.trial_index) <
                     std::tie(b.dataset, lb, b.trial_index);
            });
  return report;
}

std::vector<Method> compare_method_set(ResponseKind kind, int cv_folds,
                                       double fast_fraction) {
  std::vector<LearnerKind> learners = {LearnerKind::Svm, LearnerKind::Gbm,
                                       LearnerKind::ElasticNet};
  if (kind == ResponseKind::Binary) {
    learners.push_back(LearnerKind::AdaBoost);
  }
  std::vector<Method> methods;
  for (LearnerKind l : learners) {
    for (OptimizerKind o :
         {OptimizerKind::HookeJeeves, OptimizerKind::Genetic}) {
      methods.push_back({l, o, CrossValidation{cv_folds}});
      methods.push_back({l, o, FastHoldout{fast_fraction}});
    }
  }
  return methods;
}

BenchReport compare_models(const NamedDataset& dataset, int trials,
                           std::uint64_t base_seed,
                           const TuneSettings& settings, int jobs) {
  return run_benchmark({dataset}, compare_method_set(dataset.data.response.kind),
                       trials, base_seed, settings, jobs);
}

std::vector<AggregateRow> BenchReport::aggregates() const {
  std::map<std::pair<std::string, std::string>,
           std::vector<const TrialRecord*>>
      cells;
  for (const TrialRecord& r : records) {
    cells[{r.dataset, r.method.label()}].push_back(&r);
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, recs] : cells) {
    int n_ok = 0, n_failed = 0;
    double seconds = 0.0;
    std::vector<std::pair<MetricKind, double>> sums;
    for (const TrialRecord* r : recs) {
      if (r->failed) {
        ++n_failed;
        continue;
      }
      ++n_ok;
      seconds += r->tune_seconds;
      if (sums.empty()) {
        sums = r->test_metrics;
      } else {
        for (std::size_t i = 0; i < sums.size(); ++i) {
          sums[i].second += r->test_metrics[i].second;
        }
      }
    }
    if (n_ok == 0) continue;
    for (const auto& [metric, total] : sums) {
      AggregateRow row;
      row.dataset = key.first;
      row.method = key.second;
      row.metric = metric;
      row.mean_value = total / n_ok;
      row.mean_seconds = seconds / n_ok;
      row.n_trials = n_ok;
      row.n_failed = n_failed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

nlohmann::json report_to_json(const BenchReport& report) {
  nlohmann::json j;
  j["base_seed"] = report.base_seed;
  j["trials"] = report.trials;
  j["records"] = nlohmann::json::array();
  for (const TrialRecord& r : report.records) {
    nlohmann::json rec;
    rec["dataset"] = r.dataset;
    rec["learner"] = to_string(r.method.learner);
    rec["optimizer"] = to_string(r.method.optimizer);
    rec["strategy"] = strategy_to_json(r.method.strategy);
    rec["trial"] = r.trial_index;
    rec["seed"] = r.seed;
    rec["failed"] = r.failed;
    if (r.failed) rec["error"] = r.error;
    rec["tune_seconds"] = r.tune_seconds;
    rec["n_evals"] = r.n_evals;
    if (!r.failed) {
      rec["best_loss"] = r.best_loss;
      rec["best_config"] = nlohmann::json::array();
      for (const auto& [name, value] : r.best_config) {
        rec["best_config"].push_back({{"name", name}, {"value", value}});
      }
      rec["test_metrics"] = nlohmann::json::object();
      for (const auto& [metric, value] : r.test_metrics) {
        rec["test_metrics"][to_string(metric)] = value;
      }
    }
    j["records"].push_back(std::move(rec));
  }
  j["aggregates"] = nlohmann::json::array();
  for (const AggregateRow& row : report.aggregates()) {
    j["aggregates"].push_back({{"dataset", row.dataset},
                               {"method", row.method},
                               {"metric", to_string(row.metric)},
                               {"mean_value", row.mean_value},
                               {"mean_seconds", row.mean_seconds},
                               {"n_trials", row.n_trials},
                               {"n_failed", row.n_failed}});
  }
  return j;
}

BenchReport report_from_json(const nlohmann::json& j) {
  BenchReport report;
  report.base_seed = j.at("base_seed").get<std::uint64_t>();
  report.trials = j.at("trials").get<int>();
  for (const auto& rec : j.at("records")) {
    TrialRecord r;
    r.dataset = rec.at("dataset").get<std::string>();
    r.method.learner = learner_from_string(rec.at("learner").get<std::string>());
    r.method.optimizer =
        optimizer_from_string(rec.at("optimizer").get<std::string>());
    r.method.strategy = strategy_from_json(rec.at("strategy"));
    r.trial_index = rec.at("trial").get<int>();
    r.seed = rec.at("seed").get<std::uint64_t>();
    r.failed = rec.at("failed").get<bool>();
    r.tune_seconds = rec.at("tune_seconds").get<double>();
    r.n_evals = rec.at("n_evals").get<int>();
    if (r.failed) {
      r.error = rec.value("error", "");
    } else {
      r.best_loss = rec.at("best_loss").get<double>();
      for (const auto& item : rec.at("best_config")) {
        r.best_config.emplace_back(item.at("name").get<std::string>(),
                                   item.at("value").get<double>());
      }
      for (const auto& [name, value] : rec.at("test_metrics").items()) {
        r.test_metrics.emplace_back(metric_from_string(name),
                                    value.get<double>());
      }
    }
    report.records.push_back(std::move(r));
  }
  return report;
}

std::string report_to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "dataset,method,metric,mean_value,mean_seconds,n_trials\n";
  for (const AggregateRow& row : report.aggregates()) {
    if (row.metric != MetricKind::Accuracy && row.metric != MetricKind::RMSE) {
      continue;
    }
    out << row.dataset << "," << row.method << "," << to_string(row.metric)
        << "," << format_double(row.mean_value) << ","
        << format_double(row.mean_seconds) << "," << row.n_trials << "\n";
  }
  return out.str();
}

}  // namespace autotune
