#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "galcas/liealg.hpp"
#include "galcas/polynomial.hpp"

namespace galcas::envelope {

using exact::Rational;

/// Normal-ordered PBW monomial X_{w0} X_{w1} ... with w nondecreasing in the
/// basis order of the algebra.
using Word = std::vector<std::uint16_t>;

/// Element of U(g) in normal order: a sparse map from ordered words to
/// nonzero rational coefficients.
class PbwElement {
 public:
  using TermMap = std::map<Word, Rational>;

  PbwElement() = default;
  static PbwElement scalar(const Rational& c);
  static PbwElement generator(std::size_t i, const Rational& c = Rational(1));
  /// `w` must already be nondecreasing.
  static PbwElement monomial(Word w, const Rational& c = Rational(1));

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// -1 for zero.
  int degree() const;
  Rational coeff(const Word& w) const;

  void add_term(const Word& w, const Rational& c);

  PbwElement& operator+=(const PbwElement& o);
  PbwElement& operator-=(const PbwElement& o);
  PbwElement& operator*=(const Rational& c);
  friend PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
  friend PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }
  friend PbwElement operator*(PbwElement a, const Rational& c) { return a *= c; }
  friend PbwElement operator*(const Rational& c, PbwElement a) { return a *= c; }
  bool operator==(const PbwElement& o) const { return terms_ == o.terms_; }

  /// Commutative image: each ordered word read as a monomial in the coordinates.
  exact::MultiPoly symbol() const;

  std::string to_string(const lie::LieAlgebra& L) const;

 private:
  TermMap terms_;
};

class DegreeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Arithmetic in U(g) for a fixed algebra. Holds the straightening memo table,
/// so an Envelope must not be shared between threads; create one per thread.
class Envelope {
 public:
  static constexpr unsigned kDefaultDegreeCap = 12;

  explicit Envelope(const lie::LieAlgebra& L, unsigned degree_cap = kDefaultDegreeCap);

  const lie::LieAlgebra& algebra() const { return L_; }
  unsigned degree_cap() const { return cap_; }

  PbwElement generator(std::size_t i) const { return PbwElement::generator(i); }

  /// Normal-ordered product a * b.
  PbwElement product(const PbwElement& a, const PbwElement& b);
  /// a b - b a.
  PbwElement commutator(const PbwElement& a, const PbwElement& b);
  /// Normal form of X_{w0} X_{w1} ... for an arbitrary (unordered) word.
  PbwElement ordered_product(std::span<const std::uint16_t> word);

  /// Symmetrization of a polynomial in the coordinates x_k (VarId k = basis index k).
  /// Throws std::invalid_argument for variables outside the basis.
  PbwElement symmetrize(const exact::MultiPoly& p);

  bool is_central(const PbwElement& c);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  const PbwElement& right_multiply(const Word& u, std::uint16_t x);
  PbwElement right_multiply(const PbwElement& e, std::uint16_t x);
  void check_degree(int degree) const;

  const lie::LieAlgebra& L_;
  unsigned cap_;
  std::map<std::pair<Word, std::uint16_t>, PbwElement> memo_;
};

/// {"pbw": true, "terms": [{"coeff": ..., "monomial": {generator: power}}]}; the
/// product order of each monomial is the basis order of the algebra.
nlohmann::json to_json(const PbwElement& e, const lie::LieAlgebra& L);

}  // namespace galcas::envelope
