#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/matrix.hpp"

using namespace galcas;
using lie::BasisLabel;
using lie::HalfInt;
using lie::Signature;
using Kind = BasisLabel::Kind;

namespace {

exact::Rational coeff_of(const lie::Combination& c, std::size_t gen) {
  for (const auto& t : c)
    if (t.gen == gen) return t.coeff;
  return exact::Rational(0);
}

// Three generators labelled as P_{0,i} so the constructor accepts them.
lie::LieAlgebra three_dim(const std::vector<lie::LieAlgebra::Bracket>& br) {
  return lie::LieAlgebra({{Kind::P, 0, 1}, {Kind::P, 0, 2}, {Kind::P, 0, 3}}, br);
}

}  // namespace

TEST_CASE("parameters") {
  CHECK(HalfInt::parse("3/2").twice() == 3);
  CHECK(HalfInt::parse("1/2").floor() == 0);
  CHECK_THROWS_AS(HalfInt::parse("2/2"), lie::ParameterError);
  CHECK_THROWS_AS(HalfInt::parse("1.5"), lie::ParameterError);
  CHECK_THROWS_AS(HalfInt::parse("-3/2"), lie::ParameterError);
  CHECK_THROWS_AS(HalfInt::parse("3/4"), lie::ParameterError);
  CHECK_THROWS_AS(Signature(1, 1), lie::ParameterError);
  CHECK_NOTHROW(Signature(0, 3));
}

TEST_CASE("pairing constants") {
  CHECK(lie::pairing_constant(HalfInt(3), 0) == 6);
  CHECK(lie::pairing_constant(HalfInt(3), 1) == -2);
  CHECK(lie::pairing_constant(HalfInt(1), 0) == -1);
  CHECK(lie::pairing_constant(HalfInt(1), 1) == 1);
}

TEST_CASE("dimensions") {
  const auto L = lie::build_extended(HalfInt(3), Signature(3, 0));
  CHECK(L.dim() == 19);
  CHECK(lie::build_unextended(HalfInt(3), Signature(3, 0)).dim() == 18);
  // 3 + d(d-1)/2 + (2l+1)d
  CHECK(lie::build_unextended(HalfInt(5), Signature(6, 0)).dim() == 3 + 15 + 36);
  CHECK(lie::expected_dim(HalfInt(5), Signature(6, 0), true) == 55);
  CHECK(L.basis().front().name() == "H");
  CHECK(L.basis().back().name() == "M");
}

TEST_CASE("brackets") {
  const auto L = lie::build_extended(HalfInt(3), Signature(3, 0));
  const auto& b = L.bracket(L.index_P(0, 1), L.index_P(3, 1));
  REQUIRE(b.size() == 1);
  CHECK(b[0].gen == L.index_M());
  CHECK(b[0].coeff == 6);
  CHECK(coeff_of(L.bracket(L.index_D(), L.index_H()), L.index_H()) == 2);
  CHECK(coeff_of(L.bracket(L.index_D(), L.index_C()), L.index_C()) == -2);
  CHECK(coeff_of(L.bracket(L.index_C(), L.index_H()), L.index_D()) == 1);
  // antisymmetrized table
  CHECK(coeff_of(L.bracket(L.index_H(), L.index_D()), L.index_H()) == -2);

  // [E_jk, P_{n,i}] = delta_ji g_i P_{n,k} - delta_ki g_i P_{n,j}, worked by hand for g_33 = -1
  const auto K = lie::build_extended(HalfInt(1), Signature(2, 1));
  const auto& e = K.bracket(K.index_E(1, 3), K.index_P(0, 3));
  REQUIRE(e.size() == 1);
  CHECK(e[0].gen == K.index_P(0, 1));
  CHECK(e[0].coeff == 1);
  // [P_{n,k}, P_{m,k}] carries g_kk
  CHECK(coeff_of(K.bracket(K.index_P(0, 3), K.index_P(1, 3)), K.index_M()) == 1);
  CHECK(coeff_of(K.bracket(K.index_P(0, 1), K.index_P(1, 1)), K.index_M()) == -1);
}

TEST_CASE("jacobi_check") {
  CHECK(lie::jacobi_check(lie::build_extended(HalfInt(3), Signature(3, 0))).empty());
  CHECK(lie::jacobi_check(lie::build_extended(HalfInt(1), Signature(2, 2))).empty());
  CHECK(lie::jacobi_check(lie::build_unextended(HalfInt(5), Signature(3, 1))).empty());

  // [X1,X2]=X3, [X2,X3]=X1: every cyclic term vanishes by hand, so this one is a Lie algebra (e(2))
  CHECK(lie::jacobi_check(three_dim({{0, 1, {{2, exact::Rational(1)}}}, {1, 2, {{0, exact::Rational(1)}}}})).empty());

  // [X1,X2]=X1, [X1,X3]=X2: [[X1,X2],X3] + [[X2,X3],X1] + [[X3,X1],X2] = X2 by hand
  const auto bad = three_dim({{0, 1, {{0, exact::Rational(1)}}}, {0, 2, {{1, exact::Rational(1)}}}});
  const auto v = lie::jacobi_check(bad);
  REQUIRE(v.size() == 1);
  REQUIRE(v[0].residual.size() == 1);
  CHECK(v[0].residual[0].gen == 1);
  CHECK(v[0].residual[0].coeff == 1);
  CHECK(lie::jacobi_check_serial(bad).size() == 1);
}

TEST_CASE("parallel and serial Jacobi scans agree") {
  for (int tw : {1, 3})
    for (int q : {0, 1, 2}) {
      const auto L = lie::build_extended(HalfInt(tw), Signature(4 - q, q));
      CHECK(lie::jacobi_check(L).size() == lie::jacobi_check_serial(L).size());
    }
}

TEST_CASE("commutator matrix") {
  const auto L = lie::build_extended(HalfInt(1), Signature(3, 0));
  const auto A = lie::commutator_matrix(L);
  const auto H = static_cast<exact::VarId>(L.index_H());
  CHECK(A(L.index_D(), L.index_H()) == exact::MultiPoly::var(H) * exact::Rational(2));
  CHECK(A(L.index_H(), L.index_D()) == exact::MultiPoly::var(H) * exact::Rational(-2));

  // so(3): the commutator matrix is a nonzero 3x3 skew matrix, so its rank is exactly 2
  const auto so3 = three_dim({{0, 1, {{2, exact::Rational(1)}}},
                              {1, 2, {{0, exact::Rational(1)}}},
                              {0, 2, {{1, exact::Rational(-1)}}}});
  CHECK(lie::jacobi_check(so3).empty());
  CHECK(inv::generic_rank(so3, 3, 42).rank == 2);
  CHECK(inv::bb_count(so3, 3, 42).N == 1);
}

TEST_CASE("algebra JSON") {
  const auto j = lie::to_json(lie::build_extended(HalfInt(3), Signature(3, 0)));
  CHECK(j["dim"] == 19);
  CHECK(j["params"]["l"] == "3/2");
  CHECK(j["params"]["extended"] == true);
  CHECK(j["basis"][0] == "H");
  for (const auto& b : j["brackets"]) CHECK(!b["rhs"].empty());
}
