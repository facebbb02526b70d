#include "autotune/optimize.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "autotune/alpha_grid.hpp"
#include "autotune/rng.hpp"

namespace autotune {

namespace {

struct BudgetExhausted {};

// Funnels every evaluation into the trace and the running best.
class Recorder {
 public:
  Recorder(const LossFn& loss, int budget, TuneResult& out)
      : loss_(loss), budget_(budget), out_(out) {}

  double operator()(const Eigen::VectorXd& x) {
    if (out_.n_evals >= budget_) throw BudgetExhausted{};
    const double v = loss_(x);
    ++out_.n_evals;
    out_.trace.push_back({x, v});
    if (out_.best_scaled.size() == 0 || v < out_.best_loss) {
      out_.best_loss = v;
      out_.best_scaled = x;
    }
    return v;
  }

 private:
  const LossFn& loss_;
  int budget_;
  TuneResult& out_;
};

}  // namespace

std::string to_string(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::HookeJeeves: return "hj";
    case OptimizerKind::Genetic: return "ga";
    case OptimizerKind::AlphaGrid: return "grid";
  }
  throw std::invalid_argument("unknown optimizer");
}

OptimizerKind optimizer_from_string(const std::string& s) {
  if (s == "hj" || s == "hjn") return OptimizerKind::HookeJeeves;
  if (s == "ga") return OptimizerKind::Genetic;
  if (s == "grid") return OptimizerKind::AlphaGrid;
  throw std::invalid_argument("unknown optimizer '" + s + "'");
}

TuneResult hooke_jeeves(const LossFn& loss, const SearchSpace& space,
                        const Eigen::VectorXd& init_scaled,
                        const HookeJeevesOptions& opts) {
  const int d = space.size();
  if (d == 0) throw std::invalid_argument("search space is empty");
  if (opts.budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (!(opts.step_fraction > 0.0) || !(opts.tol > 0.0)) {
    throw std::invalid_argument("step fraction and tol must be > 0");
  }

  TuneResult result;
  Recorder eval(loss, opts.budget, result);

  Eigen::VectorXd width(d), steps(d);
  for (int i = 0; i < d; ++i) {
    width[i] = space.dims[i].scaled_width();
    steps[i] = opts.step_fraction * width[i];
  }

  // One probe per dimension, first improvement accepted, both signs tried.
  auto explore = [&](Eigen::VectorXd x, double fx) {
    for (int i = 0; i < d; ++i) {
      if (steps[i] <= 0.0) continue;
      for (double sign : {+1.0, -1.0}) {
        Eigen::VectorXd probe = x;
        probe[i] = std::min(space.dims[i].scaled_upper(),
                            std::max(space.dims[i].scaled_lower(),
                                     x[i] + sign * steps[i]));
        if (probe[i] == x[i]) continue;
        const double fp = eval(probe);
        if (fp < fx) {
          x = std::move(probe);
          fx = fp;
          break;
        }
      }
    }
    return std::make_pair(x, fx);
  };

  try {
    Eigen::VectorXd x_base = space.clamp_scaled(init_scaled);
    double f_base = eval(x_base);
    for (;;) {
      auto [x_cand, f_cand] = explore(x_base, f_base);
      if (f_cand < f_base) {
        for (;;) {
          const Eigen::VectorXd x_prev = x_base;
          x_base = x_cand;
          f_base = f_cand;
          const Eigen::VectorXd x_pat =
              space.clamp_scaled(2.0 * x_base - x_prev);
          if ((x_pat - x_base).cwiseAbs().maxCoeff() == 0.0) break;
          const double f_pat = eval(x_pat);
          std::tie(x_cand, f_cand) = explore(x_pat, f_pat);
          if (!(f_cand < f_base)) break;
        }
      } else {
        bool any_live = false;
        for (int i = 0; i < d; ++i) {
          steps[i] *= 0.5;
          if (width[i] > 0.0 && steps[i] >= opts.tol * width[i]) {
            any_live = true;
          }
        }
        if (!any_live) break;
      }
    }
  } catch (const BudgetExhausted&) {
  }

  result.best_naturals = space.naturals(result.best_scaled);
  return result;
}

TuneResult hooke_jeeves(const LossFn& loss, const SearchSpace& space,
                        const HookeJeevesOptions& opts) {
  return hooke_jeeves(loss, space, space.center_scaled(), opts);
}

TuneResult genetic_search(const LossFn& loss, const SearchSpace& space,
                          const GeneticOptions& opts) {
  const int d = space.size();
  if (d == 0) throw std::invalid_argument("search space is empty");
  if (opts.population < 2) {
    throw std::invalid_argument("population must be >= 2");
  }
  if (opts.generations < 0) {
    throw std::invalid_argument("generations must be >= 0");
  }

  TuneResult result;
  Recorder eval(loss, opts.population * (opts.generations + 1), result);
  Rng rng(opts.seed);

  Eigen::VectorXd lower(d), upper(d), width(d);
  for (int i = 0; i < d; ++i) {
    lower[i] = space.dims[i].scaled_lower();
    upper[i] = space.dims[i].scaled_upper();
    width[i] = upper[i] - lower[i];
  }

  struct Member {
    Eigen::VectorXd x;
    double f;
  };
  std::vector<Member> population;
  population.reserve(opts.population);

  try {
    for (int i = 0; i < opts.population; ++i) {
      Eigen::VectorXd x(d);
      for (int g = 0; g < d; ++g) x[g] = rng.uniform(lower[g], upper[g]);
      population.push_back({x, eval(x)});
    }

    for (int gen = 0; gen < opts.generations; ++gen) {
      int elite = 0;
      for (int i = 1; i < opts.population; ++i) {
        if (population[i].f < population[elite].f) elite = i;
      }
      std::vector<Member> next;
      next.reserve(opts.population);
      next.push_back(population[elite]);

      auto pick_parent = [&]() -> const Member& {
        const auto a = rng.uniform_index(opts.population);
        const auto b = rng.uniform_index(opts.population);
        return population[a].f <= population[b].f ? population[a]
                                                  : population[b];
      };

      while (static_cast<int>(next.size()) < opts.population) {
        const Member& pa = pick_parent();
        const Member& pb = pick_parent();
        Eigen::VectorXd child(d);
        for (int g = 0; g < d; ++g) {
          const double lo = std::min(pa.x[g], pb.x[g]);
          const double hi = std::max(pa.x[g], pb.x[g]);
          const double spread = opts.blend_alpha * (hi - lo);
          child[g] = rng.uniform(lo - spread, hi + spread);
        }
        for (int g = 0; g < d; ++g) {
          if (rng.uniform01() < opts.mutation_rate) {
            child[g] += rng.normal() * opts.mutation_sigma * width[g];
          }
          child[g] = std::min(upper[g], std::max(lower[g], child[g]));
        }
        next.push_back({child, eval(child)});
      }
      population = std::move(next);
    }
  } catch (const BudgetExhausted&) {
  }

  result.best_naturals = space.naturals(result.best_scaled);
  return result;
}

TuneResult tune(const Objective& objective, OptimizerKind optimizer,
                const TuneSettings& settings, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TuneResult result;
  const LossFn loss = [&objective](const Eigen::VectorXd& x) {
    return objective.evaluate_scaled(x);
  };
  switch (optimizer) {
    case OptimizerKind::HookeJeeves:
      result = hooke_jeeves(loss, objective.space(), settings.hj);
      break;
    case OptimizerKind::Genetic: {
      GeneticOptions ga = settings.ga;
      ga.seed = seed;
      result = genetic_search(loss, objective.space(), ga);
      break;
    }
    case OptimizerKind::AlphaGrid:
      result = grid_alpha_lambda(objective, settings.lambda_rule);
      break;
  }
  if (!settings.keep_trace) result.trace.clear();
  result.tune_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace autotune
