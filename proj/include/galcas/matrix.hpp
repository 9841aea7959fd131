#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "galcas/rational.hpp"

namespace galcas::exact {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatVector row(std::size_t r) const;
  RatVector operator*(const RatVector& v) const;
  RatMatrix transpose() const;

  bool operator==(const RatMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact rank by fraction-free (Bareiss) elimination on the row-scaled integer matrix.
std::size_t rank(const RatMatrix& m);

/// Basis of the right kernel; size is cols - rank. Each vector is scaled to
/// have a leading coefficient of 1 in its free column.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Exact determinant by Bareiss elimination. Throws std::invalid_argument for
/// non-square input.
Rational determinant(const RatMatrix& m);

/// One solution x of m x = rhs, or nullopt if the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs);

}  // namespace galcas::exact
