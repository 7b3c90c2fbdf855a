#include "fastkassim/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fastkassim/error.hpp"

namespace fastkassim {

ScoreMatrix::ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_)
    throw Error(ErrorCode::InvalidArgument, "matrix value count does not match its shape");
}

ScoreMatrix ScoreMatrix::transposed() const {
  ScoreMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

// Min-cost assignment of every row for rows <= cols. Returns column per row.
std::vector<std::size_t> hungarian_rows(const ScoreMatrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  constexpr double inf = std::numeric_limits<double>::infinity();

  // 1-based; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
  std::vector<double> minv(m + 1);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of(n, 0);
  for (std::size_t j = 1; j <= m; ++j)
    if (owner[j] != 0) col_of[owner[j] - 1] = j - 1;
  return col_of;
}

}  // namespace

Assignment solve(const ScoreMatrix& matrix, Sense sense) {
  if (matrix.rows() == 0 || matrix.cols() == 0) throw Error(ErrorCode::InvalidArgument, "empty score matrix");
  for (std::size_t k = 0; k < matrix.values().size(); ++k) {
    if (!std::isfinite(matrix.values()[k]))
      throw Error(ErrorCode::NonFiniteEntry, "entry (" + std::to_string(k / matrix.cols()) + ", " +
                                                 std::to_string(k % matrix.cols()) + ") is not finite");
  }

  const bool flip = matrix.rows() > matrix.cols();
  ScoreMatrix cost = flip ? matrix.transposed() : matrix;
  if (sense == Sense::Maximize) {
    for (std::size_t r = 0; r < cost.rows(); ++r)
      for (std::size_t c = 0; c < cost.cols(); ++c) cost(r, c) = -cost(r, c);
  }

  const std::vector<std::size_t> col_of = hungarian_rows(cost);
  Assignment result;
  result.pairs.reserve(col_of.size());
  for (std::size_t r = 0; r < col_of.size(); ++r) {
    if (flip)
      result.pairs.emplace_back(col_of[r], r);
    else
      result.pairs.emplace_back(r, col_of[r]);
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  for (const auto& [r, c] : result.pairs) result.objective += matrix(r, c);
  return result;
}

}  // namespace fastkassim
