#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>

#include "galcas/envelope.hpp"
#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/matrix.hpp"
#include "galcas/virtual_copy.hpp"

using namespace galcas;
using exact::MultiPoly;
using exact::Rational;
using exact::VarId;
using lie::HalfInt;
using lie::Signature;

namespace {

MultiPoly x(std::size_t i) { return MultiPoly::var(static_cast<VarId>(i)); }

// Oracle: sum_j C_ij^k x_k dF/dx_j at a point, with dF/dx_j from MultiPoly::diff.
bool annihilated_at(const MultiPoly& F, const lie::LieAlgebra& L, const std::vector<Rational>& pt) {
  std::vector<Rational> grad(L.dim());
  for (std::size_t j = 0; j < L.dim(); ++j) grad[j] = F.diff(static_cast<VarId>(j)).evaluate(pt);
  for (std::size_t i = 0; i < L.dim(); ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < L.dim(); ++j)
      for (const auto& t : L.bracket(i, j)) s += t.coeff * pt[t.gen] * grad[j];
    if (s != 0) return false;
  }
  return true;
}

// Oracle: Laplace expansion along rows, memoized on the set of used columns.
Rational laplace_det(const exact::RatMatrix& m) {
  const std::size_t n = m.rows();
  std::map<unsigned, Rational> memo;
  std::function<Rational(std::size_t, unsigned)> rec = [&](std::size_t row, unsigned used) -> Rational {
    if (row == n) return Rational(1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Rational s(0);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      if (m(row, c) != 0) s += sign * m(row, c) * rec(row + 1, used | (1u << c));
      sign = -sign;
    }
    memo[used] = s;
    return s;
  };
  return rec(0, 0);
}

struct Copy {
  lie::LieAlgebra L;
  envelope::Envelope env;
  vcopy::VirtualCopy vc;
  explicit Copy(int tw, Signature sig) : L(lie::build_extended(HalfInt(tw), sig)), env(L), vc(vcopy::solve_copy(L, env)) {}
};

}  // namespace

TEST_CASE("realized operators") {
  const auto L = lie::build_extended(HalfInt(1), Signature(3, 0));
  const auto ops = inv::realize(L);
  REQUIRE(ops.size() == L.dim());
  // [D, H] = 2H
  CHECK(ops[L.index_D()].apply(x(L.index_H())) == x(L.index_H()) * Rational(2));
  CHECK(ops[L.index_M()].is_zero());
}

TEST_CASE("bb_count") {
  CHECK(inv::bb_count(lie::build_extended(HalfInt(1), Signature(3, 0)), 3, 42).N == 3);
  CHECK(inv::bb_count(lie::build_unextended(HalfInt(5), Signature(5, 0)), 3, 42).N == 17);
  for (int q = 0; q <= 3; ++q) CHECK(inv::bb_count(lie::build_unextended(HalfInt(3), Signature(6 - q, q)), 3, 42).N == 8);
  const auto rep = inv::bb_count(lie::build_extended(HalfInt(3), Signature(4, 0)), 3, 42);
  CHECK(rep.N == 4);
  CHECK(rep.dim == rep.rank + rep.N);
  CHECK(rep.j0 * 2 == rep.rank);
  CHECK_THROWS_AS(inv::bb_count(lie::build_extended(HalfInt(1), Signature(3, 0)), 0, 42), std::invalid_argument);
  const auto j = inv::to_json(rep);
  for (const char* k : {"N", "rank", "j0", "trials", "seed"}) CHECK(j.contains(k));
}

TEST_CASE("parallel and serial kernels agree") {
  const auto L = lie::build_unextended(HalfInt(3), Signature(5, 0));
  const auto a = inv::generic_rank(L, 4, 9), b = inv::generic_rank_serial(L, 4, 9);
  CHECK(a.rank == b.rank);
  CHECK(a.agreeing == b.agreeing);
  Copy c(1, Signature(3, 0));
  const auto F = inv::casimir_sl2(c.vc);
  CHECK(inv::invariance_check(F, c.L) == inv::invariance_check_serial(F, c.L));
  CHECK(inv::invariance_check_serial(x(c.L.index_H()), c.L) == false);
}

TEST_CASE("sl(2) Casimir") {
  Copy c(1, Signature(3, 0));
  const auto F = inv::casimir_sl2(c.vc);
  const auto D = static_cast<VarId>(c.L.index_D()), M = static_cast<VarId>(c.L.index_M());
  CHECK(F.coeff(exact::Monomial({{D, 2}, {M, 2}})) == 1);
  CHECK(F.total_degree() == 4);
  CHECK(F.is_homogeneous());
  CHECK(inv::invariance_check(F, c.L));
  for (const auto& pt : inv::random_points(3, c.L.dim(), 5, 50)) CHECK(annihilated_at(F, c.L, pt));
  CHECK_FALSE(inv::invariance_check(x(c.L.index_H()), c.L));
}

TEST_CASE("so Casimirs") {
  {
    Copy c(1, Signature(3, 0));
    const auto so = inv::casimir_so(c.vc);
    REQUIRE(so.size() == 1);
    CHECK(so[0].e_degree == 2);
    CHECK(so[0].poly.total_degree() == 4);
    CHECK(inv::invariance_check(so[0].poly, c.L));
    CHECK(annihilated_at(so[0].poly, c.L, inv::random_points(1, c.L.dim(), 8, 50)[0]));
  }
  {
    Copy c(1, Signature(3, 1));
    const auto so = inv::casimir_so(c.vc);
    REQUIRE(so.size() == 2);
    CHECK(so[1].route == "pfaffian");
    for (const auto& s : so) {
      CHECK(s.poly.total_degree() == 4);
      CHECK(inv::invariance_check(s.poly, c.L));
    }
    std::vector<MultiPoly> fs{x(c.L.index_M()), inv::casimir_sl2(c.vc), so[0].poly, so[1].poly};
    CHECK(inv::jacobian_rank(fs, c.L.dim(), 42) == 4);
    CHECK(inv::bb_count(c.L, 3, 42).N == 4);
  }
}

TEST_CASE("jacobian rank") {
  // x0, x1, x0 x1 are dependent
  CHECK(inv::jacobian_rank({x(0), x(1), x(0) * x(1)}, 3, 1) == 2);
  CHECK(inv::jacobian_rank({x(0), x(1) * x(2), x(2)}, 3, 1) == 3);
}

TEST_CASE("bordered matrix") {
  Copy c(1, Signature(3, 0));
  const auto A = inv::matrix_A(c.L);
  CHECK(A.rows() == 10);
  CHECK(A.is_skew());
  const auto pt = inv::random_points(1, c.L.dim(), 3, 30)[0];
  const auto det = inv::det_A(c.L);
  CHECK(det.evaluate(pt) == laplace_det(A.evaluate(pt)));
}

TEST_CASE("determinant identity") {
  Copy c(1, Signature(3, 0));
  const auto rep = inv::verify_det_identity(c.L, c.vc, 5, 42);
  CHECK(rep.consistent);
  CHECK(rep.samples == 5);
  CHECK(rep.order == 10);
  CHECK(rep.m_exponent == 2);
  REQUIRE(rep.kappa);
  CHECK(*rep.kappa == rep.printed_kappa);
  CHECK(rep.matches_printed);
  CHECK(inv::printed_det_constant(HalfInt(3), Signature(3, 0)) == Rational(2985984));
  const auto j = inv::to_json(rep);
  CHECK(j.contains("kappa"));
}
