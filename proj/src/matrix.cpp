#include "galcas/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace galcas::exact {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged row list");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

RatVector RatMatrix::operator*(const RatVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  RatVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

// Scales row r by the lcm of its denominators; returns the scale factor.
Integer integer_row(const RatMatrix& m, std::size_t r, std::vector<Integer>& out) {
  Integer l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
  out.resize(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out[c] = m(r, c).get_num() * (l / m(r, c).get_den());
  return l;
}

// Forward Bareiss elimination. Returns the rank; a[0..rank) is an echelon
// form whose last pivot equals the determinant of the leading minor (up to the
// sign recorded in `sign`).
std::size_t bareiss(IntRows& a, std::size_t cols, int& sign) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    const Integer& piv = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      Integer lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = piv * a[i][j];
        if (lead != 0) t -= lead * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = piv;
    ++r;
  }
  return r;
}

void remove_content(std::vector<Integer>& row) {
  Integer g = 0;
  for (const auto& x : row) {
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row)
      if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Gauss-Jordan on integer rows with content removal; returns pivot columns,
// row i of the result has its pivot at pivots[i] and zeros in every other
// pivot column.
std::vector<std::size_t> gauss_jordan(IntRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    remove_content(a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Integer lead = a[i][c];
      const Integer& piv = a[r][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (a[r][j] == 0) {
          if (a[i][j] != 0) a[i][j] *= piv;
          continue;
        }
        a[i][j] = piv * a[i][j] - lead * a[r][j];
      }
      remove_content(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

IntRows to_integer_rows(const RatMatrix& m) {
  IntRows a(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) integer_row(m, r, a[r]);
  return a;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  IntRows a = to_integer_rows(m);
  int sign = 1;
  return bareiss(a, m.cols(), sign);
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  IntRows a(n);
  Integer scale = 1;
  for (std::size_t r = 0; r < n; ++r) scale *= integer_row(m, r, a[r]);
  int sign = 1;
  if (bareiss(a, n, sign) < n) return Rational(0);
  Rational det(a[n - 1][n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  const std::size_t cols = m.cols();
  IntRows a = to_integer_rows(m);
  auto pivots = gauss_jordan(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (a[i][f] == 0) continue;
      Rational x(-a[i][f], a[i][pivots[i]]);
      x.canonicalize();
      v[pivots[i]] = x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong length");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  IntRows a = to_integer_rows(aug);
  auto pivots = gauss_jordan(a, aug.cols());
  RatVector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    Rational v(a[i][m.cols()], a[i][pivots[i]]);
    v.canonicalize();
    x[pivots[i]] = v;
  }
  return x;
}

}  // namespace galcas::exact
