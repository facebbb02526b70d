#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "autotune/model.hpp"

namespace autotune {

enum class ScaleKind { Linear, Log2, Log10 };

// Half-up rounding would pull 2.5 to 3; searches here round ties toward the
// smaller integer so budget-like parameters stay conservative.
double round_half_down(double v);

struct Dimension {
  std::string name;
  double lower = 0.0;  // natural units, inclusive
  double upper = 1.0;
  ScaleKind scale = ScaleKind::Linear;
  bool integral = false;

  double to_scaled(double natural) const;
  // Clamps into the box, inverts the scale, and rounds integral dimensions.
  double from_scaled(double scaled) const;
  double scaled_lower() const;
  double scaled_upper() const;
  double scaled_width() const;
};

struct SearchSpace {
  std::vector<Dimension> dims;

  int size() const { return static_cast<int>(dims.size()); }
  Eigen::VectorXd center_scaled() const;
  Eigen::VectorXd clamp_scaled(Eigen::VectorXd scaled) const;
  std::vector<double> naturals(const Eigen::VectorXd& scaled) const;
};

// The stock ranges searched for each learner. Continuous svm adds the tube
// width epsilon.
SearchSpace default_space(LearnerKind learner, ResponseKind response);

}  // namespace autotune
