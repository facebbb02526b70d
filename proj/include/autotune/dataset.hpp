#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace autotune {

enum class ResponseKind { Binary, Continuous };

// Response column. Binary responses are coded 0/1; the original labels are
// kept for reporting.
struct ResponseVector {
  ResponseKind kind = ResponseKind::Continuous;
  Eigen::VectorXd values;
  std::array<std::string, 2> labels{"0", "1"};
};

struct Dataset {
  Eigen::MatrixXd features;  // n x p, all finite
  std::vector<std::string> feature_names;
  ResponseVector response;

  Eigen::Index n_rows() const { return features.rows(); }
  Eigen::Index n_features() const { return features.cols(); }

  Dataset subset(const std::vector<int>& rows) const;
};

struct TrainTestSplit {
  std::vector<int> train_indices;
  std::vector<int> test_indices;
};

// Fold ids run 1..k, one id per row.
struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_of;

  std::vector<int> fold_rows(int fold) const;
  std::vector<int> complement_rows(int fold) const;
};

// Loads a csv file, one-hot encodes categorical feature columns, and maps the
// target column to a binary 0/1 coding (two distinct non-numeric labels, the
// lexicographically larger one becomes 1) or keeps it continuous (numeric).
// Missing values, non-finite numbers, constant targets, and targets with more
// than two levels are errors.
Dataset load_csv(const std::string& path, const std::string& target);

TrainTestSplit initial_split(const Dataset& data, double proportion = 0.75,
                             bool stratify = false, std::uint64_t seed = 0);

FoldAssignment vfold(const Dataset& data, int k, bool stratify = false,
                     std::uint64_t seed = 0);

// Splits off round(fraction * n) rows to fit on; the rest are held out for
// scoring. train_indices is the fit part.
TrainTestSplit fast_holdout(const Dataset& data, double fraction = 0.5,
                            bool stratify = false, std::uint64_t seed = 0);

struct BundledDataset {
  std::string name;
  std::string file;
  std::string target;
};

const std::vector<BundledDataset>& bundled_datasets();

// AUTOTUNE_DATA_DIR overrides the directory baked in at build time.
std::string resolve_data_dir();

Dataset load_bundled(const std::string& name);

}  // namespace autotune
