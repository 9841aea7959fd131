#pragma once

#include <cstddef>
#include <map>
#include <tuple>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "galcas/poly_matrix.hpp"
#include "galcas/polynomial.hpp"
#include "galcas/rational.hpp"

namespace galcas::lie {

using exact::Rational;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A positive half-odd-integer l, stored as 2l.
class HalfInt {
 public:
  explicit HalfInt(int twice);
  /// Accepts "a/2" with a odd and positive.
  static HalfInt parse(std::string_view text);

  int twice() const { return twice_; }
  /// l - 1/2, the integer part.
  int floor() const { return (twice_ - 1) / 2; }
  Rational value() const { return exact::make_rational(twice_, 2); }
  std::string str() const { return std::to_string(twice_) + "/2"; }

  bool operator==(const HalfInt&) const = default;

 private:
  int twice_;
};

/// Metric diag(+1 x p, -1 x q) with d = p + q >= 3.
class Signature {
 public:
  Signature(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  int d() const { return p_ + q_; }
  /// Diagonal metric entry, 1-based index.
  int g(int i) const { return i <= p_ ? 1 : -1; }

  bool operator==(const Signature&) const = default;

 private:
  int p_;
  int q_;
};

struct BasisLabel {
  enum class Kind { H, D, C, E, P, M };
  Kind kind;
  // E: (a, b) = (i, j), 1 <= i < j <= d.  P: (a, b) = (n, i), 0 <= n <= 2l.
  int a = 0;
  int b = 0;

  std::string name() const;
  bool is_levi() const { return kind == Kind::H || kind == Kind::D || kind == Kind::C || kind == Kind::E; }
  bool operator==(const BasisLabel&) const = default;
};

struct Term {
  std::size_t gen;
  Rational coeff;
  bool operator==(const Term&) const = default;
};

/// A sparse linear combination of basis elements.
using Combination = std::vector<Term>;

struct AlgebraParams {
  std::optional<HalfInt> ell;
  std::optional<Signature> sig;
  bool extended = false;
};

/// Finite-dimensional Lie algebra given by structure constants over an ordered basis.
/// Only brackets of i < j are specified; the table is antisymmetrized on construction.
class LieAlgebra {
 public:
  struct Bracket {
    std::size_t i;
    std::size_t j;
    Combination rhs;
  };

  LieAlgebra(std::vector<BasisLabel> basis, const std::vector<Bracket>& brackets, AlgebraParams params = {});

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisLabel>& basis() const { return basis_; }
  const AlgebraParams& params() const { return params_; }

  /// [X_i, X_j] as a combination of basis elements.
  const Combination& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  std::optional<std::size_t> find(const BasisLabel& label) const;
  std::size_t index_of(const BasisLabel& label) const;
  std::size_t index_H() const { return index_of({BasisLabel::Kind::H}); }
  std::size_t index_D() const { return index_of({BasisLabel::Kind::D}); }
  std::size_t index_C() const { return index_of({BasisLabel::Kind::C}); }
  std::size_t index_M() const { return index_of({BasisLabel::Kind::M}); }
  std::size_t index_E(int i, int j) const { return index_of({BasisLabel::Kind::E, i, j}); }
  std::size_t index_P(int n, int i) const { return index_of({BasisLabel::Kind::P, n, i}); }
  bool has_center_generator() const { return find({BasisLabel::Kind::M}).has_value(); }

  /// Indices of the Levi generators (H, D, C, E) in basis order.
  std::vector<std::size_t> levi_indices() const;
  /// Indices of the radical generators (P and M) in basis order.
  std::vector<std::size_t> radical_indices() const;

  /// "x_<label>" for every basis element; VarId k names the coordinate dual to X_k.
  exact::VarNames coordinate_names() const;

 private:
  std::vector<BasisLabel> basis_;
  std::vector<Combination> table_;
  AlgebraParams params_;
  std::map<std::tuple<int, int, int>, std::size_t> lookup_;
};

/// I_m = (-1)^(m + l + 1/2) (2l - m)! m!
exact::Integer pairing_constant(HalfInt ell, int m);

std::size_t expected_dim(HalfInt ell, Signature sig, bool extended);

LieAlgebra build_extended(HalfInt ell, Signature sig);
LieAlgebra build_unextended(HalfInt ell, Signature sig);

struct JacobiViolation {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Combination residual;
};

/// All triples i < j < k whose cyclic Jacobi sum does not vanish.
/// Parallelized over the outer index with OpenMP.
std::vector<JacobiViolation> jacobi_check(const LieAlgebra& L);
/// Single-threaded reference for jacobi_check.
std::vector<JacobiViolation> jacobi_check_serial(const LieAlgebra& L);

/// Skew matrix with entry (i, j) = sum_k C_ij^k x_k, variable ids = basis indices.
exact::PolyMatrix commutator_matrix(const LieAlgebra& L);

nlohmann::json to_json(const LieAlgebra& L);

/// Adds c * v into the sparse combination `acc`.
void accumulate(Combination& acc, const Combination& v, const Rational& c);
Combination normalized(Combination v);

}  // namespace galcas::lie
