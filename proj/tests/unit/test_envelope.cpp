#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "galcas/envelope.hpp"
#include "galcas/liealg.hpp"

using namespace galcas;
using envelope::Envelope;
using envelope::PbwElement;
using exact::Rational;

namespace {

const lie::LieAlgebra& schroedinger() {
  static const auto L = lie::build_extended(lie::HalfInt(1), lie::Signature(3, 0));
  return L;
}

PbwElement gen(std::size_t i) { return PbwElement::generator(i); }

}  // namespace

TEST_CASE("straightening") {
  const auto& L = schroedinger();
  Envelope env(L);
  const auto H = L.index_H(), D = L.index_D();
  // H < D in the basis order: H D is normal, D H = H D + [D, H] = H D + 2H
  CHECK(env.product(gen(H), gen(D)) == PbwElement::monomial({std::uint16_t(H), std::uint16_t(D)}));
  const auto dh = env.product(gen(D), gen(H));
  CHECK(dh == PbwElement::monomial({std::uint16_t(H), std::uint16_t(D)}) + gen(H) * Rational(2));
}

TEST_CASE("commutators reproduce the brackets") {
  const auto& L = schroedinger();
  Envelope env(L);
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) {
      PbwElement want;
      for (const auto& t : L.bracket(i, j)) want += gen(t.gen) * t.coeff;
      CHECK(env.commutator(gen(i), gen(j)) == want);
    }
  const auto K = lie::build_extended(lie::HalfInt(3), lie::Signature(3, 0));
  Envelope ek(K);
  CHECK(ek.commutator(gen(K.index_P(0, 1)), gen(K.index_P(3, 1))) == gen(K.index_M()) * Rational(6));
}

TEST_CASE("associativity on random words") {
  const auto& L = schroedinger();
  Envelope env(L);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint16_t> pick(0, static_cast<std::uint16_t>(L.dim() - 1));
  for (int trial = 0; trial < 20; ++trial) {
    envelope::Word a{pick(rng), pick(rng)}, b{pick(rng)}, c{pick(rng), pick(rng)};
    const auto A = env.ordered_product(a), B = env.ordered_product(b), C = env.ordered_product(c);
    CHECK(env.product(env.product(A, B), C) == env.product(A, env.product(B, C)));
    envelope::Word abc = a;
    abc.insert(abc.end(), b.begin(), b.end());
    abc.insert(abc.end(), c.begin(), c.end());
    CHECK(env.ordered_product(abc) == env.product(env.product(A, B), C));
  }
}

TEST_CASE("degree cap") {
  const auto& L = schroedinger();
  Envelope env(L, 3);
  const envelope::Word w{0, 0, 0, 0};
  CHECK_THROWS_AS(env.ordered_product(w), envelope::DegreeCapExceeded);
}

TEST_CASE("symmetrization") {
  const auto& L = schroedinger();
  Envelope env(L);
  const auto C = static_cast<exact::VarId>(L.index_C()), H = static_cast<exact::VarId>(L.index_H());
  // (CH + HC)/2 = HC + [C, H]/2 = HC + D/2
  const auto s = env.symmetrize(exact::MultiPoly::var(C) * exact::MultiPoly::var(H));
  const auto want = PbwElement::monomial({std::uint16_t(H), std::uint16_t(C)}) + gen(L.index_D()) * Rational(1, 2);
  CHECK(s == want);
  CHECK(s.symbol().homogeneous_part(2) == exact::MultiPoly::var(C) * exact::MultiPoly::var(H));
  CHECK_THROWS_AS(env.symmetrize(exact::MultiPoly::var(static_cast<exact::VarId>(L.dim()))), std::invalid_argument);
}

TEST_CASE("centrality") {
  const auto& L = schroedinger();
  Envelope env(L);
  CHECK(env.is_central(gen(L.index_M())));
  CHECK_FALSE(env.is_central(gen(L.index_H())));
  CHECK(env.is_central(PbwElement::scalar(Rational(3))));
}

TEST_CASE("PBW JSON") {
  const auto& L = schroedinger();
  Envelope env(L);
  const auto j = envelope::to_json(env.product(gen(L.index_D()), gen(L.index_H())), L);
  CHECK(j["pbw"] == true);
  CHECK(j["terms"].size() == 2);
}
