#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "autotune/bench.hpp"
#include "autotune/dataset.hpp"
#include "autotune/model.hpp"
#include "autotune/objective.hpp"
#include "autotune/optimize.hpp"
#include "autotune/rng.hpp"
#include "autotune/svg_plot.hpp"

namespace {

using autotune::BenchReport;
using autotune::EvalStrategy;
using autotune::Method;
using autotune::NamedDataset;
using autotune::TuneSettings;

// Accepts a bundled dataset name, a csv path (target set separately), or the
// combined form path.csv:target.
NamedDataset resolve_dataset(const std::string& spec,
                             const std::string& target) {
  std::string path = spec;
  std::string tgt = target;
  if (const auto colon = spec.rfind(':');
      colon != std::string::npos && spec.find(".csv") != std::string::npos) {
    path = spec.substr(0, colon);
    tgt = spec.substr(colon + 1);
  }
  if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    if (tgt.empty()) {
      throw std::invalid_argument("csv dataset '" + path +
                                  "' needs a target column (--target "
                                  "or path.csv:target)");
    }
    return {std::filesystem::path(path).stem().string(),
            autotune::load_csv(path, tgt)};
  }
  std::string name = spec;
  for (char& c : name) {
    if (c == '_') c = '-';
  }
  return {name, autotune::load_bundled(spec)};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

nlohmann::json strategy_json(const EvalStrategy& s) {
  if (const auto* cv = std::get_if<autotune::CrossValidation>(&s)) {
    return {{"type", "cv"}, {"k", cv->k}};
  }
  return {{"type", "fast"},
          {"fraction", std::get<autotune::FastHoldout>(s).fraction}};
}

void print_summary(const BenchReport& report, std::ostream& out) {
  out << std::left << std::setw(16) << "dataset" << std::setw(18) << "method"
      << std::setw(10) << "metric" << std::right << std::setw(12) << "mean"
      << std::setw(12) << "seconds" << std::setw(8) << "trials"
      << std::setw(8) << "failed" << "\n";
  for (const auto& row : report.aggregates()) {
    out << std::left << std::setw(16) << row.dataset << std::setw(18)
        << row.method << std::setw(10) << to_string(row.metric) << std::right
        << std::fixed << std::setprecision(4) << std::setw(12)
        << row.mean_value << std::setprecision(2) << std::setw(12)
        << row.mean_seconds << std::setw(8) << row.n_trials << std::setw(8)
        << row.n_failed << "\n";
    out.unsetf(std::ios::fixed);
  }
}

struct CommonOpts {
  std::uint64_t seed = 42;
  int trials = 10;
  int jobs = 1;
  std::string json_path;
  std::string csv_path;
  std::string svg_path;
  std::string out_prefix;
};

void add_output_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--json", opts.json_path, "write the full report here");
  cmd->add_option("--csv", opts.csv_path, "write the aggregate table here");
  cmd->add_option("--svg", opts.svg_path, "write the scatter figure here");
  cmd->add_option("--out", opts.out_prefix,
                  "prefix for .json, .csv and .svg outputs");
}

// Returns true if any file was written.
bool emit_report(const BenchReport& report, const CommonOpts& opts) {
  std::string json_path = opts.json_path;
  std::string csv_path = opts.csv_path;
  std::string svg_path = opts.svg_path;
  if (!opts.out_prefix.empty()) {
    if (json_path.empty()) json_path = opts.out_prefix + ".json";
    if (csv_path.empty()) csv_path = opts.out_prefix + ".csv";
    if (svg_path.empty()) svg_path = opts.out_prefix + ".svg";
  }
  bool wrote = false;
  if (!json_path.empty()) {
    write_file(json_path, autotune::report_to_json(report).dump(2) + "\n");
    wrote = true;
  }
  if (!csv_path.empty()) {
    write_file(csv_path, autotune::report_to_csv(report));
    wrote = true;
  }
  if (!svg_path.empty()) {
    write_file(svg_path, autotune::render_benchmark_svg(report));
    wrote = true;
  }
  return wrote;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperparameter tuning for svm, boosting and the elastic net"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "autotune 0.1.0");
  int exit_code = 0;

  // ---- tune ----
  auto* tune_cmd = app.add_subcommand(
      "tune", "search for good hyperparameters on one dataset");
  tune_cmd->set_config("--config");
  struct {
    std::string data;
    std::string target;
    std::string learner;
    std::string optimizer = "hj";
    double fast_fraction = 0.5;
    int cv_k = 10;
    std::uint64_t seed = 42;
    bool trace = false;
    std::string lambda_rule = "min";
    autotune::HookeJeevesOptions hj;
    autotune::GeneticOptions ga;
  } t;
  tune_cmd->add_option("--data", t.data,
                       "bundled dataset name or csv path")->required();
  tune_cmd->add_option("--target", t.target, "target column for csv data");
  tune_cmd->add_option("--learner,--method", t.learner,
                       "svm, gbm, ada or en")->required();
  tune_cmd->add_option("--optimizer", t.optimizer, "hj, ga or grid");
  auto* tune_fast =
      tune_cmd->add_option("--fast", t.fast_fraction,
                           "score on a single holdout, fitting on this "
                           "fraction of the rows")
          ->check(CLI::Range(0.05, 0.95));
  auto* tune_cv = tune_cmd->add_option("--cross", t.cv_k,
                                       "score with k-fold cross validation")
                      ->check(CLI::Range(2, 100));
  tune_fast->excludes(tune_cv);
  tune_cv->excludes(tune_fast);
  tune_cmd->add_option("--seed", t.seed, "rng seed")->envname("AUTOTUNE_SEED");
  tune_cmd->add_flag("--trace", t.trace, "include every evaluation in the "
                                         "output");
  tune_cmd->add_option("--hj-budget", t.hj.budget, "evaluation budget")
      ->check(CLI::PositiveNumber);
  tune_cmd->add_option("--hj-step", t.hj.step_fraction,
                       "initial step as a fraction of each range")
      ->check(CLI::Range(1e-4, 1.0));
  tune_cmd->add_option("--hj-tol", t.hj.tol, "stop once steps shrink below "
                                             "this fraction of each range")
      ->check(CLI::Range(1e-10, 1.0));
  tune_cmd->add_option("--ga-pop", t.ga.population, "population size")
      ->check(CLI::Range(2, 10000));
  tune_cmd->add_option("--ga-gens", t.ga.generations, "generations")
      ->check(CLI::PositiveNumber);
  tune_cmd->add_option("--lambda-rule", t.lambda_rule,
                       "lambda pick for the grid optimizer")
      ->check(CLI::IsMember({"min", "1se"}));
  tune_cmd->callback([&]() {
    const NamedDataset ds = resolve_dataset(t.data, t.target);
    EvalStrategy strategy;
    if (tune_cv->count() > 0) {
      strategy = autotune::CrossValidation{t.cv_k};
    } else {
      strategy = autotune::FastHoldout{t.fast_fraction};
    }
    const auto learner = autotune::learner_from_string(t.learner);
    const auto optimizer = autotune::optimizer_from_string(t.optimizer);
    TuneSettings settings;
    settings.hj = t.hj;
    settings.ga = t.ga;
    settings.lambda_rule = t.lambda_rule == "1se"
                               ? autotune::LambdaRule::OneSE
                               : autotune::LambdaRule::MinLambda;
    settings.keep_trace = t.trace;

    const autotune::Rng base(t.seed);
    const autotune::Objective objective(ds.data, learner, strategy,
                                        base.fork(2).seed());
    const autotune::TuneResult result =
        autotune::tune(objective, optimizer, settings, base.fork(3).seed());

    nlohmann::json out;
    out["dataset"] = ds.name;
    out["learner"] = to_string(learner);
    out["optimizer"] = to_string(optimizer);
    out["strategy"] = strategy_json(strategy);
    out["seed"] = t.seed;
    out["loss"] = objective.loss_name();
    out["best_loss"] = result.best_loss;
    out["n_evals"] = result.n_evals;
    out["tune_seconds"] = result.tune_seconds;
    out["best_config"] = nlohmann::json::array();
    const auto& dims = objective.space().dims;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      out["best_config"].push_back(
          {{"name", dims[d].name},
           {"value", d < result.best_naturals.size() ? result.best_naturals[d]
                                                     : 0.0}});
    }
    if (t.trace) {
      out["trace"] = nlohmann::json::array();
      for (const auto& entry : result.trace) {
        nlohmann::json scaled = nlohmann::json::array();
        for (Eigen::Index i = 0; i < entry.scaled.size(); ++i) {
          scaled.push_back(entry.scaled[i]);
        }
        out["trace"].push_back(
            {{"scaled", std::move(scaled)}, {"loss", entry.loss}});
      }
    }
    std::cout << out.dump(2) << "\n";
    if (!std::isfinite(result.best_loss)) exit_code = 1;
  });

  // ---- benchmark ----
  auto* bench_cmd = app.add_subcommand(
      "benchmark", "repeated train/test trials over datasets and methods");
  bench_cmd->set_config("--config");
  struct {
    std::vector<std::string> data;
    std::vector<std::string> learners = {"svm", "gbm", "en"};
    std::vector<std::string> optimizers = {"hj"};
    double fast_fraction = 0.5;
    int cv_k = 10;
    std::string lambda_rule = "min";
    CommonOpts common;
  } b;
  bench_cmd
      ->add_option("--data,--datasets", b.data,
                   "bundled name or path.csv:target, repeatable "
                   "(default: every bundled dataset)")
      ->delimiter(',');
  bench_cmd->add_option("--learner", b.learners, "svm, gbm, ada, en")
      ->delimiter(',');
  bench_cmd->add_option("--optimizer", b.optimizers, "hj, ga, grid")
      ->delimiter(',');
  auto* bench_fast =
      bench_cmd->add_option("--fast", b.fast_fraction,
                            "add the single-holdout strategy with this "
                            "fitting fraction")
          ->check(CLI::Range(0.05, 0.95));
  auto* bench_cv =
      bench_cmd->add_option("--cross", b.cv_k,
                            "add the k-fold cross validation strategy")
          ->check(CLI::Range(2, 100));
  bench_cmd->add_option("--trials", b.common.trials, "trials per cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", b.common.seed, "base rng seed")
      ->envname("AUTOTUNE_SEED");
  bench_cmd->add_option("--jobs", b.common.jobs, "worker threads")
      ->check(CLI::Range(1, 256));
  bench_cmd->add_option("--lambda-rule", b.lambda_rule,
                        "lambda pick for the grid optimizer")
      ->check(CLI::IsMember({"min", "1se"}));
  add_output_options(bench_cmd, b.common);
  bench_cmd->callback([&]() {
    std::vector<NamedDataset> datasets;
    if (b.data.empty()) {
      for (const auto& bundled : autotune::bundled_datasets()) {
        datasets.push_back({bundled.name, autotune::load_bundled(bundled.name)});
      }
    } else {
      for (const auto& spec : b.data) {
        datasets.push_back(resolve_dataset(spec, ""));
      }
    }
    std::vector<EvalStrategy> strategies;
    if (bench_fast->count() > 0 || bench_cv->count() == 0) {
      strategies.push_back(autotune::FastHoldout{b.fast_fraction});
    }
    if (bench_cv->count() > 0) {
      strategies.push_back(autotune::CrossValidation{b.cv_k});
    }
    std::vector<Method> methods;
    for (const auto& l : b.learners) {
      for (const auto& o : b.optimizers) {
        for (const auto& s : strategies) {
          methods.push_back({autotune::learner_from_string(l),
                             autotune::optimizer_from_string(o), s});
        }
      }
    }
    TuneSettings settings;
    settings.keep_trace = false;
    settings.lambda_rule = b.lambda_rule == "1se"
                               ? autotune::LambdaRule::OneSE
                               : autotune::LambdaRule::MinLambda;
    const BenchReport report =
        autotune::run_benchmark(datasets, methods, b.common.trials,
                                b.common.seed, settings, b.common.jobs);
    if (emit_report(report, b.common)) {
      print_summary(report, std::cout);
    } else {
      std::cout << autotune::report_to_json(report).dump(2) << "\n";
    }
    bool any_ok = false;
    for (const auto& rec : report.records) any_ok = any_ok || !rec.failed;
    if (!any_ok) exit_code = 1;
  });

  // ---- compare ----
  auto* compare_cmd = app.add_subcommand(
      "compare", "run every learner, optimizer and strategy on one dataset");
  compare_cmd->set_config("--config");
  struct {
    std::string data;
    std::string target;
    double fast_fraction = 0.5;
    int cv_k = 10;
    CommonOpts common;
  } c;
  compare_cmd->add_option("--data", c.data,
                          "bundled dataset name or csv path")->required();
  compare_cmd->add_option("--target", c.target, "target column for csv data");
  compare_cmd->add_option("--fast", c.fast_fraction,
                          "fitting fraction for the holdout strategy")
      ->check(CLI::Range(0.05, 0.95));
  compare_cmd->add_option("--cross", c.cv_k, "folds for the cv strategy")
      ->check(CLI::Range(2, 100));
  compare_cmd->add_option("--trials", c.common.trials, "trials per cell")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", c.common.seed, "base rng seed")
      ->envname("AUTOTUNE_SEED");
  compare_cmd->add_option("--jobs", c.common.jobs, "worker threads")
      ->check(CLI::Range(1, 256));
  add_output_options(compare_cmd, c.common);
  compare_cmd->callback([&]() {
    const NamedDataset ds = resolve_dataset(c.data, c.target);
    const auto methods = autotune::compare_method_set(
        ds.data.response.kind, c.cv_k, c.fast_fraction);
    TuneSettings settings;
    settings.keep_trace = false;
    const BenchReport report =
        autotune::run_benchmark({ds}, methods, c.common.trials, c.common.seed,
                                settings, c.common.jobs);
    if (emit_report(report, c.common)) {
      print_summary(report, std::cout);
    } else {
      std::cout << autotune::report_to_json(report).dump(2) << "\n";
    }
    bool any_ok = false;
    for (const auto& rec : report.records) any_ok = any_ok || !rec.failed;
    if (!any_ok) exit_code = 1;
  });

  // ---- plot ----
  auto* plot_cmd =
      app.add_subcommand("plot", "render a saved report as an svg figure");
  struct {
    std::string in;
    std::string out;
  } p;
  plot_cmd->add_option("--in", p.in, "report json written by benchmark or "
                                     "compare")->required();
  plot_cmd->add_option("--out", p.out, "svg path (default: stdout)");
  plot_cmd->callback([&]() {
    std::ifstream in(p.in);
    if (!in) throw std::runtime_error("cannot read " + p.in);
    nlohmann::json j;
    in >> j;
    const BenchReport report = autotune::report_from_json(j);
    const std::string svg = autotune::render_benchmark_svg(report);
    if (p.out.empty()) {
      std::cout << svg;
    } else {
      write_file(p.out, svg);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
