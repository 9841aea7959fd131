#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/reduction.hpp"

using namespace galcas;
using exact::Monomial;
using exact::MultiPoly;
using exact::Rational;
using exact::VarId;
using lie::HalfInt;
using lie::Signature;
using Kind = lie::BasisLabel::Kind;

namespace {

MultiPoly u(int i) { return MultiPoly::var(static_cast<VarId>(i - 1)); }

MultiPoly row(const exact::RatMatrix& A, std::size_t i) {
  MultiPoly f;
  for (std::size_t j = 0; j < A.cols(); ++j) f.add_term(Monomial::var(static_cast<VarId>(j)), A(i, j));
  return f;
}

struct Worked {
  red::ReducedSystem S = red::build_reduced_system(HalfInt(3), Signature(3, 0));
  red::PhiBasis phi = red::phi_basis(S);
  red::Sl2Action act = red::sl2_action_on_phi(S, phi);
};

const Worked& worked() {
  static const Worked w;
  return w;
}

const MultiPoly F1 = u(4) * u(4) * Rational(3) + u(6) * u(6) * Rational(27) - u(3) * u(7) * Rational(18) -
                     u(5) * u(8) * Rational(27) + u(2) * u(9) * Rational(12) - u(1) * u(10) * Rational(3);
const MultiPoly F2 = u(6) * u(6) * Rational(27) - u(4) * u(4) * Rational(5) + u(4) * u(6) * Rational(18) +
                     u(3) * u(7) * Rational(12) - u(1) * u(10) * Rational(4) + u(2) * u(9) * Rational(24) -
                     (u(5) * u(7) + u(3) * u(8)) * Rational(36);

}  // namespace

TEST_CASE("reduced system ranks") {
  CHECK(red::build_reduced_system(HalfInt(3), Signature(7, 0)).rank == 21);
  CHECK(red::build_reduced_system(HalfInt(7), Signature(9, 0)).rank == 39);
  CHECK(red::build_reduced_system(HalfInt(3), Signature(6, 1)).rank == 21);
  CHECK(red::closed_rank(HalfInt(3), 10) == 33);
  CHECK(red::stable_N1(HalfInt(3)) == 7);
  const auto& S = worked().S;
  CHECK(S.operators.size() == 6);
  CHECK(S.pvars.size() == 12);
  CHECK(S.rank == 6);
  CHECK(S.N1 == 6);
  const auto j = red::to_json(S);
  CHECK(j["rank"] == 6);
}

TEST_CASE("closed-form counts") {
  CHECK(red::closed_count(HalfInt(1), 5) == 3);
  CHECK(red::closed_count(HalfInt(3), 5) == 7);
  CHECK(red::closed_count(HalfInt(5), 8) == 19);
  CHECK(red::closed_count(HalfInt(5), 4) == 15);
}

TEST_CASE("quadratic invariants of the radical") {
  const auto& w = worked();
  CHECK(w.phi.size() == 10);
  // (2l+1)(2l+2)/2 for l = 1/2
  CHECK(red::phi_basis(red::build_reduced_system(HalfInt(1), Signature(3, 0))).size() == 3);
  CHECK(w.phi.labels.front() == std::pair{0, 0});
}

TEST_CASE("sl(2) action on the quadratic invariants") {
  const auto& w = worked();
  CHECK(row(w.act.H, 1) == -u(1));
  CHECK(row(w.act.D, 5).is_zero());
  CHECK(row(w.act.C, 1) == u(3) * Rational(2) + u(5) * Rational(3));
  CHECK(w.act.weights == std::vector<int>{6, 4, 2, 0, 2, 0, -2, -2, -4, -6});
  // oracle: apply the differential operator to the p-polynomial directly
  for (auto [A, kind] : {std::pair{&w.act.D, Kind::D}, std::pair{&w.act.H, Kind::H}, std::pair{&w.act.C, Kind::C}})
    for (std::size_t i = 0; i < w.phi.size(); ++i) {
      MultiPoly want;
      for (std::size_t j = 0; j < w.phi.size(); ++j) want += w.phi.elements[j] * (*A)(i, j);
      CHECK(w.S.op(kind).apply(w.phi.elements[i]) == want);
    }
  // derivation rule
  CHECK(red::apply_u(w.act.D, u(1) * u(2)) == u(1) * u(2) * Rational(10));
}

TEST_CASE("ansatz solutions") {
  const auto& w = worked();
  const auto s2 = red::solve_ansatz(w.S, w.phi, w.act, 2);
  CHECK(s2.u_polys.size() == 2);
  CHECK(s2.verified);
  // F1 as printed has 12 u2 u9; H'(F1) does not vanish under the printed H' row, 18 u2 u9 does
  CHECK_FALSE(red::in_span(F1, s2.u_polys));
  CHECK(red::apply_u(w.act.H, F1) == (u(1) * u(9) + u(2) * u(7) * Rational(2) + u(2) * u(8) * Rational(3)) * Rational(6));
  const MultiPoly F1c = F1 + u(2) * u(9) * Rational(6);
  CHECK(red::in_span(F1c, s2.u_polys));
  for (const auto* A : {&w.act.D, &w.act.H, &w.act.C}) CHECK(red::apply_u(*A, F1c).is_zero());
  CHECK(red::in_span(F2, s2.u_polys));
  CHECK_FALSE(red::in_span(u(4) * u(4), s2.u_polys));
  CHECK(inv::invariance_check(red::back_substitute(F2, w.phi), w.S.operators));
  CHECK(inv::invariance_check(red::back_substitute(F1c, w.phi), w.S.operators));
  CHECK(red::solve_ansatz(w.S, w.phi, w.act, 3).u_polys.empty());

  const auto s4 = red::solve_ansatz(w.S, w.phi, w.act, 4);
  CHECK(s4.u_polys.size() == 7);
  CHECK(s4.verified);
  const std::vector<MultiPoly> products{s2.u_polys[0] * s2.u_polys[0], s2.u_polys[0] * s2.u_polys[1],
                                        s2.u_polys[1] * s2.u_polys[1]};
  CHECK(red::linear_rank(products) == 3);
  for (const auto& p : products) CHECK(red::in_span(p, s4.u_polys));
  // independent quartics modulo products: 4 in the u-variables, 3 after back-substitution
  CHECK(s4.u_polys.size() - red::linear_rank(products) == 4);
  CHECK(s4.p_rank == 6);
  CHECK(red::quartics_modulo_products(s2, s4) == 3);
}

TEST_CASE("complete sets") {
  const auto a = red::complete_set(HalfInt(3), Signature(3, 0), 4);
  CHECK(a.invariants.size() == 5);
  CHECK(a.verdict == "incomplete");
  CHECK(a.all_verified);

  const auto s = red::complete_set(HalfInt(1), Signature(3, 0), 4);
  CHECK(s.N1 == 1);
  CHECK(s.N == 2);
  CHECK(s.verdict == "incomplete");

  // N1 = 7 < N = 9: the remaining invariants involve the Levi variables
  const auto b = red::complete_set(HalfInt(3), Signature(9, 0), 2);
  CHECK(b.N1 == 7);
  CHECK(b.N == 9);
  CHECK_FALSE(b.complete);
  CHECK(b.verdict == "incomplete");
}
