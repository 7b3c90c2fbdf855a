#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fastkassim {

/// Dense row-major matrix of pairwise sentence scores.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  const std::vector<double>& values() const { return values_; }

  ScoreMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

enum class Sense { Maximize, Minimize };

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // sorted by row
  double objective = 0.0;                                  // summed in row order
};

/// Optimal assignment of min(rows, cols) pairs (Hungarian method with
/// shortest augmenting paths). Ties resolve towards the lowest column index
/// in each augmenting-path step, so results are reproducible.
/// Throws NonFiniteEntry on NaN/inf and InvalidArgument on an empty matrix.
Assignment solve(const ScoreMatrix& matrix, Sense sense);

}  // namespace fastkassim
