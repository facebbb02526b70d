#include "autotune/search_space.hpp"

#include <cmath>
#include <stdexcept>

namespace autotune {

double round_half_down(double v) {
  const double base = std::floor(v);
  return v - base > 0.5 ? base + 1.0 : base;
}

double Dimension::to_scaled(double natural) const {
  switch (scale) {
    case ScaleKind::Linear: return natural;
    case ScaleKind::Log2: return std::log2(natural);
    case ScaleKind::Log10: return std::log10(natural);
  }
  throw std::invalid_argument("unknown scale");
}

double Dimension::from_scaled(double scaled) const {
  const double s =
      std::min(scaled_upper(), std::max(scaled_lower(), scaled));
  double natural = s;
  switch (scale) {
    case ScaleKind::Linear: break;
    case ScaleKind::Log2: natural = std::exp2(s); break;
    case ScaleKind::Log10: natural = std::pow(10.0, s); break;
  }
  if (integral) natural = round_half_down(natural);
  return std::min(upper, std::max(lower, natural));
}

double Dimension::scaled_lower() const { return to_scaled(lower); }
double Dimension::scaled_upper() const { return to_scaled(upper); }
double Dimension::scaled_width() const {
  return scaled_upper() - scaled_lower();
}

Eigen::VectorXd SearchSpace::center_scaled() const {
  Eigen::VectorXd c(size());
  for (int d = 0; d < size(); ++d) {
    c[d] = 0.5 * (dims[d].scaled_lower() + dims[d].scaled_upper());
  }
  return c;
}

Eigen::VectorXd SearchSpace::clamp_scaled(Eigen::VectorXd scaled) const {
  if (scaled.size() != size()) {
    throw std::invalid_argument("scaled point has wrong dimension");
  }
  for (int d = 0; d < size(); ++d) {
    scaled[d] = std::min(dims[d].scaled_upper(),
                         std::max(dims[d].scaled_lower(), scaled[d]));
  }
  return scaled;
}

std::vector<double> SearchSpace::naturals(const Eigen::VectorXd& scaled) const {
  if (scaled.size() != size()) {
    throw std::invalid_argument("scaled point has wrong dimension");
  }
  std::vector<double> out(dims.size());
  for (int d = 0; d < size(); ++d) out[d] = dims[d].from_scaled(scaled[d]);
  return out;
}

SearchSpace default_space(LearnerKind learner, ResponseKind response) {
  SearchSpace space;
  switch (learner) {
    case LearnerKind::Svm:
      space.dims.push_back(
          {"cost", std::exp2(-5.0), std::exp2(15.0), ScaleKind::Log2, false});
      space.dims.push_back(
          {"gamma", std::exp2(-15.0), std::exp2(3.0), ScaleKind::Log2, false});
      if (response == ResponseKind::Continuous) {
        space.dims.push_back({"epsilon", 0.0, 0.5, ScaleKind::Linear, false});
      }
      break;
    case LearnerKind::Gbm:
      space.dims.push_back({"n_trees", 50.0, 3000.0, ScaleKind::Linear, true});
      space.dims.push_back({"depth", 1.0, 10.0, ScaleKind::Linear, true});
      space.dims.push_back({"shrinkage", 1e-3, std::pow(10.0, -0.5),
                            ScaleKind::Log10, false});
      space.dims.push_back({"min_node", 5.0, 15.0, ScaleKind::Linear, true});
      break;
    case LearnerKind::AdaBoost:
      space.dims.push_back({"n_iters", 50.0, 2000.0, ScaleKind::Linear, true});
      space.dims.push_back({"depth", 1.0, 10.0, ScaleKind::Linear, true});
      space.dims.push_back(
          {"shrinkage", 0.01, 1.0, ScaleKind::Linear, false});
      break;
    case LearnerKind::ElasticNet:
      space.dims.push_back({"alpha", 0.0, 1.0, ScaleKind::Linear, false});
      space.dims.push_back({"lambda", 1e-4, 1e2, ScaleKind::Log10, false});
      break;
  }
  return space;
}

}  // namespace autotune
