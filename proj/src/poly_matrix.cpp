#include "galcas/poly_matrix.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace galcas::exact {

RatMatrix PolyMatrix::evaluate(std::span<const Rational> values) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero()) out(r, c) = (*this)(r, c).evaluate(values);
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool PolyMatrix::is_skew() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (!((*this)(r, c) + (*this)(c, r)).is_zero()) return false;
  return true;
}

namespace {

constexpr std::size_t kMaxExpansionOrder = 24;

class MinorExpansion {
 public:
  explicit MinorExpansion(const PolyMatrix& m) : m_(m), n_(m.rows()) {}

  // Determinant of rows [row, n) restricted to the columns not in `used`.
  const MultiPoly& minor(std::size_t row, std::uint32_t used) {
    if (row == n_) return one_;
    auto it = memo_.find(used);
    if (it != memo_.end()) return it->second;
    MultiPoly acc;
    int sign = 1;
    for (std::size_t c = 0; c < n_; ++c) {
      if (used & (1U << c)) continue;
      const MultiPoly& entry = m_(row, c);
      if (!entry.is_zero()) {
        const MultiPoly& sub = minor(row + 1, used | (1U << c));
        if (!sub.is_zero()) {
          if (sign > 0)
            acc += entry * sub;
          else
            acc -= entry * sub;
        }
      }
      sign = -sign;
    }
    return memo_.emplace(used, std::move(acc)).first->second;
  }

 private:
  const PolyMatrix& m_;
  std::size_t n_;
  MultiPoly one_ = MultiPoly::constant(Rational(1));
  // the row index is implied by popcount(used), so the mask alone is the key
  std::unordered_map<std::uint32_t, MultiPoly> memo_;
};

class PfaffianExpansion {
 public:
  explicit PfaffianExpansion(const PolyMatrix& m) : m_(m), n_(m.rows()) {}

  const MultiPoly& pf(std::uint32_t remaining) {
    if (remaining == 0) return one_;
    auto it = memo_.find(remaining);
    if (it != memo_.end()) return it->second;
    const auto i = static_cast<std::size_t>(std::countr_zero(remaining));
    const std::uint32_t rest = remaining & ~(1U << i);
    MultiPoly acc;
    int sign = 1;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!(rest & (1U << j))) continue;
      const MultiPoly& entry = m_(i, j);
      if (!entry.is_zero()) {
        const MultiPoly& sub = pf(rest & ~(1U << j));
        if (!sub.is_zero()) {
          if (sign > 0)
            acc += entry * sub;
          else
            acc -= entry * sub;
        }
      }
      sign = -sign;
    }
    return memo_.emplace(remaining, std::move(acc)).first->second;
  }

 private:
  const PolyMatrix& m_;
  std::size_t n_;
  MultiPoly one_ = MultiPoly::constant(Rational(1));
  std::unordered_map<std::uint32_t, MultiPoly> memo_;
};

}  // namespace

MultiPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square polynomial matrix");
  if (m.rows() > kMaxExpansionOrder) throw std::length_error("polynomial determinant order too large");
  if (m.rows() == 0) return MultiPoly::constant(Rational(1));
  MinorExpansion e(m);
  return e.minor(0, 0);
}

MultiPoly pfaffian(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pfaffian of a non-square polynomial matrix");
  if (m.rows() > kMaxExpansionOrder) throw std::length_error("pfaffian order too large");
  if (m.rows() % 2 == 1) return {};
  if (m.rows() == 0) return MultiPoly::constant(Rational(1));
  PfaffianExpansion e(m);
  return e.pf((1U << m.rows()) - 1U);
}

}  // namespace galcas::exact
