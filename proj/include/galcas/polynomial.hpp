#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "galcas/rational.hpp"

namespace galcas::exact {

/// Opaque variable identifier. The modules that create polynomials decide what
/// an id means (coordinate dual to a basis element, u-variable, ...).
using VarId = std::uint32_t;

/// Display names indexed by VarId; used only for diagnostics and serialization.
using VarNames = std::vector<std::string>;

std::string var_name(VarId v, const VarNames* names);

/// Product of powers x_v^e with e > 0, kept sorted by variable id.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);

  static Monomial var(VarId v, std::uint32_t power = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const;
  std::uint32_t exponent(VarId v) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

class MissingVariable : public std::out_of_range {
 public:
  MissingVariable(VarId v, const std::string& name)
      : std::out_of_range("no value assigned to variable " + name), var_(v) {}
  VarId var() const { return var_; }

 private:
  VarId var_;
};

using Point = std::map<VarId, Rational>;

/// Sparse multivariate polynomial with rational coefficients. No stored
/// coefficient is ever zero.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  MultiPoly() = default;

  static MultiPoly constant(const Rational& c);
  static MultiPoly var(VarId v);
  static MultiPoly term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);
  Rational coeff(const Monomial& m) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  MultiPoly homogeneous_part(int degree) const;
  std::vector<VarId> variables() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  MultiPoly pow(unsigned n) const;
  MultiPoly diff(VarId v) const;

  Rational evaluate(const Point& point, const VarNames* names = nullptr) const;
  /// Dense evaluation, values indexed by VarId.
  Rational evaluate(std::span<const Rational> values) const;

  MultiPoly substitute(const std::map<VarId, MultiPoly>& images) const;

  std::string to_string(const VarNames* names = nullptr) const;

 private:
  TermMap terms_;
};

}  // namespace galcas::exact
