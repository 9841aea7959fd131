#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "galcas/matrix.hpp"
#include "galcas/polynomial.hpp"

namespace galcas::exact {

/// Dense matrix of MultiPoly entries.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  MultiPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatMatrix evaluate(std::span<const Rational> values) const;
  PolyMatrix transpose() const;
  bool is_skew() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MultiPoly> data_;
};

/// Exact determinant by minor expansion memoized over column subsets
/// (division-free, so no multivariate division is needed). Cost grows like
/// n * 2^n polynomial products; orders above 24 are rejected.
/// Throws std::invalid_argument for non-square input.
MultiPoly determinant(const PolyMatrix& m);

/// Pfaffian of a skew-symmetric matrix by memoized expansion along the first
/// remaining row. Zero for odd order. Throws std::invalid_argument when the
/// input is not square.
MultiPoly pfaffian(const PolyMatrix& m);

}  // namespace galcas::exact
