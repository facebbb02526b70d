#include "autotune/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "autotune/rng.hpp"

namespace autotune {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (std::isspace(static_cast<unsigned char>(s[a])) != 0)) ++a;
  while (b > a && (std::isspace(static_cast<unsigned char>(s[b - 1])) != 0)) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw std::runtime_error("unterminated quote on line " +
                             std::to_string(line_no));
  }
  out.push_back(field);
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  out = v;
  return true;
}

bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "na" || s == "N/A" || s == "?";
}

long round_count(double x, long lo, long hi) {
  const long r = std::lround(x);
  return std::max(lo, std::min(hi, r));
}

std::vector<int> class_members(const ResponseVector& response, int cls) {
  std::vector<int> out;
  for (int i = 0; i < response.values.size(); ++i) {
    if (static_cast<int>(response.values[i]) == cls) out.push_back(i);
  }
  return out;
}

TrainTestSplit split_by_fraction(const Dataset& data, double fraction,
                                 bool stratify, std::uint64_t seed,
                                 const char* what) {
  const int n = static_cast<int>(data.n_rows());
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                " fraction must lie in (0, 1)");
  }
  if (n < 2) throw std::invalid_argument("need at least 2 rows to split");

  Rng rng(seed);
  TrainTestSplit split;
  auto take_from = [&](std::vector<int> members) {
    rng.shuffle(members);
    const long n_take = round_count(
        fraction * static_cast<double>(members.size()), 0,
        static_cast<long>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (static_cast<long>(i) < n_take) {
        split.train_indices.push_back(members[i]);
      } else {
        split.test_indices.push_back(members[i]);
      }
    }
  };

  if (stratify) {
    if (data.response.kind != ResponseKind::Binary) {
      throw std::invalid_argument(
          "stratified splitting requires a binary response");
    }
    take_from(class_members(data.response, 0));
    take_from(class_members(data.response, 1));
  } else {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    take_from(std::move(idx));
  }

  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  if (split.train_indices.empty()) {
    split.train_indices.push_back(split.test_indices.back());
    split.test_indices.pop_back();
  } else if (split.test_indices.empty()) {
    split.test_indices.push_back(split.train_indices.back());
    split.train_indices.pop_back();
  }
  return split;
}

}  // namespace

Dataset Dataset::subset(const std::vector<int>& rows) const {
  if (rows.empty()) throw std::invalid_argument("subset needs at least one row");
  Dataset out;
  out.feature_names = feature_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), n_features());
  out.response.kind = response.kind;
  out.response.labels = response.labels;
  out.response.values.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= n_rows()) {
      throw std::out_of_range("subset row index " + std::to_string(r) +
                              " out of range");
    }
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(r);
    out.response.values[static_cast<Eigen::Index>(i)] = response.values[r];
  }
  return out;
}

std::vector<int> FoldAssignment::fold_rows(int fold) const {
  if (fold < 1 || fold > k) {
    throw std::out_of_range("fold id " + std::to_string(fold) +
                            " outside 1.." + std::to_string(k));
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> FoldAssignment::complement_rows(int fold) const {
  if (fold < 1 || fold > k) {
    throw std::out_of_range("fold id " + std::to_string(fold) +
                            " outside 1.." + std::to_string(k));
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(static_cast<int>(i));
  }
  return out;
}

Dataset load_csv(const std::string& path, const std::string& target) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.size() < 2) {
    throw std::runtime_error(path + ": needs a header and at least 2 data rows");
  }

  std::vector<std::string> header = split_csv_line(lines[0], 1);
  for (auto& h : header) h = trim(h);
  const int n_cols = static_cast<int>(header.size());

  int target_col = -1;
  for (int c = 0; c < n_cols; ++c) {
    if (header[c] == target) {
      if (target_col >= 0) {
        throw std::runtime_error(path + ": target column '" + target +
                                 "' appears more than once");
      }
      target_col = c;
    }
  }
  if (target_col < 0) {
    throw std::runtime_error(path + ": target column '" + target +
                             "' not found");
  }

  const int n = static_cast<int>(lines.size()) - 1;
  if (n < 2) throw std::runtime_error(path + ": needs at least 2 data rows");

  std::vector<std::vector<std::string>> cells(n);
  for (int r = 0; r < n; ++r) {
    cells[r] = split_csv_line(lines[r + 1], r + 2);
    if (static_cast<int>(cells[r].size()) != n_cols) {
      throw std::runtime_error(path + ": row " + std::to_string(r + 1) +
                               " has " + std::to_string(cells[r].size()) +
                               " fields, expected " + std::to_string(n_cols));
    }
    for (int c = 0; c < n_cols; ++c) {
      cells[r][c] = trim(cells[r][c]);
      if (is_missing(cells[r][c])) {
        throw std::runtime_error(path + ": missing value at row " +
                                 std::to_string(r + 1) + ", column '" +
                                 header[c] + "'");
      }
    }
  }

  // Column is numeric when every cell parses as a finite number.
  std::vector<char> numeric(n_cols, 1);
  std::vector<std::vector<double>> parsed(n_cols,
                                          std::vector<double>(n, 0.0));
  for (int c = 0; c < n_cols; ++c) {
    for (int r = 0; r < n; ++r) {
      double v = 0.0;
      if (!parse_number(cells[r][c], v)) {
        numeric[c] = 0;
        break;
      }
      if (!std::isfinite(v)) {
        throw std::runtime_error(path + ": non-finite value at row " +
                                 std::to_string(r + 1) + ", column '" +
                                 header[c] + "'");
      }
      parsed[c][r] = v;
    }
  }

  Dataset out;
  out.response.values.resize(n);
  if (numeric[target_col]) {
    out.response.kind = ResponseKind::Continuous;
    for (int r = 0; r < n; ++r) out.response.values[r] = parsed[target_col][r];
    const double lo = out.response.values.minCoeff();
    const double hi = out.response.values.maxCoeff();
    if (lo == hi) {
      throw std::runtime_error(path + ": target column '" + target +
                               "' is constant");
    }
  } else {
    std::set<std::string> levels;
    for (int r = 0; r < n; ++r) levels.insert(cells[r][target_col]);
    if (levels.size() < 2) {
      throw std::runtime_error(path + ": target column '" + target +
                               "' is constant");
    }
    if (levels.size() > 2) {
      throw std::runtime_error(path + ": target column '" + target + "' has " +
                               std::to_string(levels.size()) +
                               " levels, only two are supported");
    }
    out.response.kind = ResponseKind::Binary;
    auto it = levels.begin();
    out.response.labels[0] = *it++;
    out.response.labels[1] = *it;
    for (int r = 0; r < n; ++r) {
      out.response.values[r] =
          cells[r][target_col] == out.response.labels[1] ? 1.0 : 0.0;
    }
  }

  std::vector<std::vector<double>> feature_cols;
  for (int c = 0; c < n_cols; ++c) {
    if (c == target_col) continue;
    if (numeric[c]) {
      out.feature_names.push_back(header[c]);
      feature_cols.push_back(parsed[c]);
    } else {
      std::set<std::string> levels;
      for (int r = 0; r < n; ++r) levels.insert(cells[r][c]);
      for (const auto& level : levels) {
        out.feature_names.push_back(header[c] + "=" + level);
        std::vector<double> col(n, 0.0);
        for (int r = 0; r < n; ++r) {
          if (cells[r][c] == level) col[r] = 1.0;
        }
        feature_cols.push_back(std::move(col));
      }
    }
  }
  if (feature_cols.empty()) {
    throw std::runtime_error(path + ": no feature columns besides the target");
  }

  out.features.resize(n, static_cast<Eigen::Index>(feature_cols.size()));
  for (std::size_t c = 0; c < feature_cols.size(); ++c) {
    for (int r = 0; r < n; ++r) {
      out.features(r, static_cast<Eigen::Index>(c)) = feature_cols[c][r];
    }
  }
  return out;
}

TrainTestSplit initial_split(const Dataset& data, double proportion,
                             bool stratify, std::uint64_t seed) {
  return split_by_fraction(data, proportion, stratify, seed, "train");
}

TrainTestSplit fast_holdout(const Dataset& data, double fraction,
                            bool stratify, std::uint64_t seed) {
  return split_by_fraction(data, fraction, stratify, seed, "holdout");
}

FoldAssignment vfold(const Dataset& data, int k, bool stratify,
                     std::uint64_t seed) {
  const int n = static_cast<int>(data.n_rows());
  if (k < 2 || k > n) {
    throw std::invalid_argument("fold count " + std::to_string(k) +
                                " outside 2.." + std::to_string(n));
  }
  Rng rng(seed);
  FoldAssignment fa;
  fa.k = k;
  fa.fold_of.assign(n, 0);
  // The fold cursor carries across strata so small classes do not pile into
  // the low-numbered folds and leave later folds empty.
  int cursor = 0;
  auto assign = [&](std::vector<int> members) {
    rng.shuffle(members);
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      fa.fold_of[members[pos]] = 1 + cursor;
      cursor = (cursor + 1) % k;
    }
  };
  if (stratify) {
    if (data.response.kind != ResponseKind::Binary) {
      throw std::invalid_argument(
          "stratified folds require a binary response");
    }
    assign(class_members(data.response, 0));
    assign(class_members(data.response, 1));
  } else {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    assign(std::move(idx));
  }
  return fa;
}

const std::vector<BundledDataset>& bundled_datasets() {
  static const std::vector<BundledDataset> sets = {
      {"sonar", "sonar.csv", "Class"},
      {"pima", "pima.csv", "diabetes"},
      {"breast-cancer", "breast_cancer.csv", "Class"},
  };
  return sets;
}

std::string resolve_data_dir() {
  if (const char* env = std::getenv("AUTOTUNE_DATA_DIR")) {
    if (*env != '\0') return env;
  }
#ifdef AUTOTUNE_DEFAULT_DATA_DIR
  return AUTOTUNE_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

Dataset load_bundled(const std::string& name) {
  std::string key = name;
  for (auto& c : key) {
    if (c == '_') c = '-';
  }
  for (const auto& b : bundled_datasets()) {
    if (b.name == key) {
      return load_csv(resolve_data_dir() + "/" + b.file, b.target);
    }
  }
  std::string known;
  for (const auto& b : bundled_datasets()) {
    if (!known.empty()) known += ", ";
    known += b.name;
  }
  throw std::invalid_argument("unknown bundled dataset '" + name +
                              "' (have: " + known + ")");
}

}  // namespace autotune
