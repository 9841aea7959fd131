#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "galcas/liealg.hpp"
#include "galcas/matrix.hpp"
#include "galcas/polynomial.hpp"
#include "galcas/virtual_copy.hpp"

namespace galcas::inv {

using exact::MultiPoly;
using exact::Rational;
using exact::VarId;

/// sum_j coeff_j * d/dx_j with coefficients linear in the coordinates.
struct DiffOperator {
  struct Term {
    MultiPoly coeff;
    VarId target;
  };
  std::vector<Term> terms;

  MultiPoly apply(const MultiPoly& f) const;
  bool is_zero() const { return terms.empty(); }
};

/// X^_i = sum_j C_ij^k x_k d/dx_j, one operator per basis element.
std::vector<DiffOperator> realize(const lie::LieAlgebra& L);

/// Integer points with entries uniform in [-bound, bound], drawn sequentially from mt19937_64(seed).
std::vector<std::vector<Rational>> random_points(std::size_t count, std::size_t dim, std::uint64_t seed,
                                                 long bound = 1'000'000);

struct RankResult {
  std::size_t rank = 0;
  std::size_t trials = 0;
  std::size_t agreeing = 0;  // trials that reached the maximum
};

/// Max over trials of the rank of (C_ij^k x_k) at random points; OpenMP over trials.
RankResult generic_rank(const lie::LieAlgebra& L, std::size_t trials, std::uint64_t seed);
/// Single-threaded reference for generic_rank.
RankResult generic_rank_serial(const lie::LieAlgebra& L, std::size_t trials, std::uint64_t seed);

/// Rank of the rows `rows` of (C_ij^k x_k) restricted to the columns `cols`, at random points.
RankResult generic_rank_block(const lie::LieAlgebra& L, const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols, std::size_t trials, std::uint64_t seed);

struct InvariantReport {
  std::string ell;
  int p = 0;
  int q = 0;
  bool extended = false;
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::size_t N = 0;
  std::size_t j0 = 0;
  std::size_t trials = 0;
  std::size_t agreeing = 0;
  std::uint64_t seed = 0;
};

/// Number of invariants N = dim - generic rank. Throws std::invalid_argument for trials == 0.
InvariantReport bb_count(const lie::LieAlgebra& L, std::size_t trials, std::uint64_t seed);

/// Top-degree analytic counterpart of a copy image: x_X x_M + quadratic in the p.
MultiPoly analytic(const envelope::PbwElement& image);

/// d^2 - 4 c h over the analytic counterparts of D~, H~, C~.
MultiPoly casimir_sl2(const vcopy::VirtualCopy& vc);

struct SoInvariant {
  MultiPoly poly;
  int e_degree = 0;       // degree in the e~
  std::string route;      // "charpoly" or "pfaffian"
};

/// Coefficients of T^{d-2k} in det(B~ - T Id), k = 1..[d/2], with B~_ab = -g_bb e~_ab;
/// for even d the last one is the Pfaffian of (e~_ab).
std::vector<SoInvariant> casimir_so(const vcopy::VirtualCopy& vc);

/// True iff every realized operator annihilates F. OpenMP over operators.
bool invariance_check(const MultiPoly& F, const lie::LieAlgebra& L);
bool invariance_check_serial(const MultiPoly& F, const lie::LieAlgebra& L);
bool invariance_check(const MultiPoly& F, const std::vector<DiffOperator>& ops);

/// Gradient of f at `pt` (all variables must be below pt.size()).
exact::RatVector gradient_at(const MultiPoly& f, const std::vector<Rational>& pt);

/// Rank of the Jacobian of `fs` at a random point over the variables 0..nvars-1.
std::size_t jacobian_rank(const std::vector<MultiPoly>& fs, std::size_t nvars, std::uint64_t seed);

/// Border reading of the bordered matrix A: sign of the sl(2) border entries.
enum class Border { Plain, SlNegated };

/// The bordered matrix A over the subalgebra spanned by D, H, C and the P, ordered
/// D, H, C, P_{0,1}, ..., P_{2l,1}, P_{0,2}, ...; entries use the coordinates of the
/// extended algebra L (x_M appears through [P, P]).
exact::PolyMatrix matrix_A(const lie::LieAlgebra& L, Border border = Border::Plain);
MultiPoly det_A(const lie::LieAlgebra& L, Border border = Border::Plain);

struct DetIdentityReport {
  std::string border;
  std::size_t order = 0;
  int m_exponent = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<Rational> kappa;   // fitted at the first usable sample
  bool consistent = false;
  Rational printed_kappa;
  bool matches_printed = false;
  std::vector<std::string> notes;
};

/// det A = kappa * x_M^{2ld+d-4} * (C'_4)^2 at random points, kappa fitted at the first
/// sample. Tries both border readings and reports the first consistent one.
DetIdentityReport verify_det_identity(const lie::LieAlgebra& L, const vcopy::VirtualCopy& vc, std::size_t samples,
                       std::uint64_t seed);

Rational printed_det_constant(lie::HalfInt ell, lie::Signature sig);

nlohmann::json to_json(const InvariantReport& r);
nlohmann::json to_json(const DetIdentityReport& r);

}  // namespace galcas::inv
