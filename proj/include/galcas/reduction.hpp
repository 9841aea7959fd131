#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/matrix.hpp"
#include "galcas/polynomial.hpp"

namespace galcas::red {

using exact::MultiPoly;
using exact::Rational;
using exact::VarId;

/// Levi operators of the unextended algebra restricted to the p-variables.
/// Coordinates keep the basis indices of `algebra`.
struct ReducedSystem {
  lie::LieAlgebra algebra;
  std::vector<std::size_t> levi;     // D, H, C, then E_{ij} in basis order
  std::vector<std::size_t> pvars;
  std::vector<inv::DiffOperator> operators;  // parallel to `levi`
  std::size_t rank = 0;
  std::size_t trials = 0;
  std::size_t agreeing = 0;
  std::size_t N1 = 0;

  const inv::DiffOperator& op(lie::BasisLabel::Kind kind) const;
};

ReducedSystem build_reduced_system(lie::HalfInt ell, lie::Signature sig, std::size_t trials = 3,
                                   std::uint64_t seed = 42);

/// (2 + d) + l(2d - 3) - 2 l^2
long closed_rank(lie::HalfInt ell, int d);
/// 2 l^2 + 3 l - 2
long stable_N1(lie::HalfInt ell);
/// The three closed-form branches for the number of invariants of the unextended algebra.
long closed_count(lie::HalfInt ell, int d);
std::string closed_count_branch(lie::HalfInt ell, int d);

/// Phi_{n,s} = sum_k (g_11 / g_kk) p_{n,k} p_{n+s,k} in (n, s) lexicographic order;
/// element i is named u_{i+1}. u-variables use VarIds 0..size-1.
struct PhiBasis {
  std::vector<std::pair<int, int>> labels;  // (n, s)
  std::vector<MultiPoly> elements;          // over the coordinates of the reduced system
  exact::VarNames u_names() const;
  std::size_t size() const { return elements.size(); }
};

PhiBasis phi_basis(const ReducedSystem& S);

/// X(u_i) = sum_j action(i, j) u_j for X in {D', H', C'}.
struct Sl2Action {
  exact::RatMatrix D;
  exact::RatMatrix H;
  exact::RatMatrix C;
  std::vector<int> weights;  // diagonal of D
};

class ClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expresses D', H', C' applied to each Phi in the Phi span. Throws ClosureError
/// if some image leaves the span.
Sl2Action sl2_action_on_phi(const ReducedSystem& S, const PhiBasis& phi);

/// Applies the derivation defined by `action` to a polynomial in the u-variables.
MultiPoly apply_u(const exact::RatMatrix& action, const MultiPoly& f);

struct AnsatzSolution {
  int degree = 0;
  std::vector<exact::Monomial> monomials;  // weight-0 u-monomials
  std::vector<MultiPoly> u_polys;          // nullspace basis in u-variables
  std::vector<MultiPoly> p_polys;          // back-substituted
  std::size_t p_rank = 0;                  // linear rank of p_polys
  bool verified = false;                   // every p_poly annihilated by the whole reduced system
};

AnsatzSolution solve_ansatz(const ReducedSystem& S, const PhiBasis& phi, const Sl2Action& act, int r);

/// u-polynomial -> p-polynomial.
MultiPoly back_substitute(const MultiPoly& u_poly, const PhiBasis& phi);

/// Linear rank of a family of polynomials (exact, over their monomial coefficients).
std::size_t linear_rank(const std::vector<MultiPoly>& fs);

/// True iff f lies in the linear span of `basis`.
bool in_span(const MultiPoly& f, const std::vector<MultiPoly>& basis);

/// p-rank of the degree-4 solutions minus the rank of the pairwise products of the
/// degree-2 solutions.
std::size_t quartics_modulo_products(const AnsatzSolution& r2, const AnsatzSolution& r4);

struct CompleteSet {
  std::vector<MultiPoly> invariants;   // functionally independent, over p-variables
  std::vector<int> degrees;            // ansatz degree r of each
  std::size_t N1 = 0;
  std::size_t N = 0;                   // number of invariants of the unextended algebra
  bool complete = false;
  bool all_verified = true;
  std::string verdict;
};

CompleteSet complete_set(lie::HalfInt ell, lie::Signature sig, int rmax, std::size_t trials = 3,
                         std::uint64_t seed = 42);

nlohmann::json to_json(const ReducedSystem& S);

}  // namespace galcas::red
