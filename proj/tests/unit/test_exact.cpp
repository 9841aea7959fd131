#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "galcas/matrix.hpp"
#include "galcas/poly_matrix.hpp"
#include "galcas/polynomial.hpp"
#include "galcas/serialize.hpp"

using namespace galcas::exact;

namespace {

MultiPoly x(VarId v) { return MultiPoly::var(v); }
MultiPoly c(long n, long d = 1) { return MultiPoly::constant(make_rational(n, d)); }

// Independent oracle: plain cofactor expansion along the first row.
Rational cofactor_det(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational sum(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(m(0, j)) == 0) continue;
    RatMatrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c2 = 0, k = 0; c2 < n; ++c2)
        if (c2 != j) sub(r - 1, k++) = m(r, c2);
    Rational t = m(0, j) * cofactor_det(sub);
    sum += (j % 2 == 0) ? t : Rational(-t);
  }
  return sum;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  return make_rational(num(rng), den(rng));
}

MultiPoly random_poly(std::mt19937_64& rng, VarId nvars) {
  std::uniform_int_distribution<int> nterms(0, 3), var(0, static_cast<int>(nvars) - 1), pw(0, 2);
  MultiPoly p;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<Monomial::Factor> fs;
    for (int f = 0; f < 2; ++f) fs.emplace_back(static_cast<VarId>(var(rng)), static_cast<std::uint32_t>(pw(rng)));
    p.add_term(Monomial(fs), random_rational(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(make_rational(4, -6) == make_rational(-2, 3));
  CHECK(is_canonical(make_rational(4, -6)));
  CHECK(make_rational(0, 5).get_den() == 1);
  CHECK(parse_rational("-10/4") == make_rational(-5, 2));
  CHECK(to_string(make_rational(6, 3)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng);
    CHECK(is_canonical(a + b));
    CHECK(is_canonical(a * b));
    CHECK(is_canonical(a - b));
    if (sgn(b) != 0) CHECK(is_canonical(a / b));
  }
}

TEST_CASE("poly_arith") {
  CHECK((x(1) + x(2)) * (x(1) - x(2)) == x(1).pow(2) - x(2).pow(2));
  CHECK((x(1) * x(2) + c(3)) * MultiPoly{} == MultiPoly{});
  CHECK((x(1) * x(2)) + (-(x(1) * x(2))) == MultiPoly{});
  CHECK(((x(1) * x(2)) + (-(x(1) * x(2)))).size() == 0);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto a = random_poly(rng, 4), b = random_poly(rng, 4), d = random_poly(rng, 4);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    const auto ab = a * b;
    for (const auto& [m, coeff] : ab.terms()) CHECK(sgn(coeff) != 0);
  }
}

TEST_CASE("poly_diff") {
  CHECK((x(1).pow(2) * x(2)).diff(1) == c(2) * x(1) * x(2));
  CHECK(x(2).diff(1).is_zero());
  const VarId u4 = 3;
  CHECK((c(3) * x(u4).pow(2)).diff(u4) == c(6) * x(u4));
}

TEST_CASE("poly_eval") {
  MultiPoly p = x(1).pow(2) - c(4) * x(2) * x(3);
  Point pt{{1, Rational(2)}, {2, Rational(1)}, {3, Rational(1)}};
  CHECK(p.evaluate(pt) == 0);
  CHECK(c(7).evaluate(Point{}) == 7);
  CHECK((x(1) * x(2)).evaluate(Point{{1, Rational(3)}, {2, make_rational(1, 3)}}) == 1);

  VarNames names{"a", "b", "c", "x_D"};
  try {
    (x(1) * x(3)).evaluate(Point{{1, Rational(1)}}, &names);
    FAIL("expected MissingVariable");
  } catch (const MissingVariable& e) {
    CHECK(e.var() == 3);
    CHECK(std::string(e.what()).find("x_D") != std::string::npos);
  }
}

TEST_CASE("mat_rank") {
  CHECK(rank(RatMatrix::identity(3)) == 3);
  CHECK(rank(RatMatrix(4, 5)) == 0);

  // so(3): [X1,X2]=X3, [X2,X3]=X1, [X3,X1]=X2 at a generic point
  const Rational x1(3), x2(-5), x3(7);
  RatMatrix so3 = RatMatrix::from_rows({{0, x3, -x2}, {-x3, 0, x1}, {x2, -x1, 0}});
  // oracle: det vanishes and one 2x2 minor does not
  CHECK(cofactor_det(so3) == 0);
  CHECK(so3(0, 0) * so3(1, 1) - so3(0, 1) * so3(1, 0) != 0);
  CHECK(rank(so3) == 2);
}

TEST_CASE("mat_rank is invariant under permutations and scaling") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t r = 2 + trial % 5, cl = 2 + (trial * 3) % 6;
    RatMatrix m(r, cl);
    // build low-rank matrices half of the time
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cl; ++j) m(i, j) = random_rational(rng);
    if (coin(rng) && r > 1)
      for (std::size_t j = 0; j < cl; ++j) m(r - 1, j) = m(0, j) * 3 - m(1 % r, j);
    const auto base = rank(m);
    std::vector<std::size_t> pr(r), pc(cl);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    RatMatrix p(r, cl);
    for (std::size_t i = 0; i < r; ++i) {
      Rational s = random_rational(rng);
      if (sgn(s) == 0) s = 1;
      for (std::size_t j = 0; j < cl; ++j) p(i, j) = m(pr[i], pc[j]) * s;
    }
    CHECK(rank(p) == base);
    CHECK(base <= std::min(r, cl));
  }
}

TEST_CASE("mat_nullspace") {
  CHECK(nullspace(RatMatrix::identity(4)).empty());
  auto ns = nullspace(RatMatrix::from_rows({{Rational(1), Rational(-1)}}));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == ns[0][1]);
  CHECK(ns[0][0] != 0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t r = 1 + trial % 6, cl = 2 + trial % 7;
    RatMatrix m(r, cl);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cl; ++j) m(i, j) = (trial % 3 == 0 && j % 2) ? Rational(0) : random_rational(rng);
    auto basis = nullspace(m);
    CHECK(basis.size() == cl - rank(m));
    for (const auto& v : basis)
      for (const auto& entry : m * v) CHECK(entry == 0);
  }
}

TEST_CASE("solve") {
  RatMatrix m = RatMatrix::from_rows({{Rational(1), Rational(2)}, {Rational(3), Rational(4)}});
  auto sol = solve(m, {Rational(5), Rational(6)});
  REQUIRE(sol);
  CHECK(m * *sol == RatVector{Rational(5), Rational(6)});
  RatMatrix sing = RatMatrix::from_rows({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
  CHECK_FALSE(solve(sing, {Rational(1), Rational(3)}));
}

TEST_CASE("rational determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
    CHECK(determinant(m) == cofactor_det(m));
  }
  CHECK_THROWS_AS(determinant(RatMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("poly_mat_det") {
  PolyMatrix diag(2, 2);
  diag(0, 0) = x(1);
  diag(1, 1) = x(2);
  CHECK(determinant(diag) == x(1) * x(2));

  PolyMatrix skew(2, 2);
  skew(0, 1) = x(0);
  skew(1, 0) = -x(0);
  CHECK(determinant(skew) == x(0).pow(2));
  CHECK(pfaffian(skew) == x(0));
  CHECK_THROWS_AS(determinant(PolyMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("poly_mat_det commutes with evaluation") {
  std::mt19937_64 rng(13);
  const VarId nvars = 4;
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 1 + trial % 6;
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_poly(rng, nvars);
    std::vector<Rational> pt(nvars);
    for (auto& v : pt) v = random_rational(rng);
    CHECK(determinant(m).evaluate(pt) == cofactor_det(m.evaluate(pt)));
  }
}

TEST_CASE("pfaffian squares to the determinant") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {2, 4, 6}) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = random_poly(rng, 3);
        m(j, i) = -m(i, j);
      }
    CHECK(m.is_skew());
    CHECK(pfaffian(m).pow(2) == determinant(m));
  }
  CHECK(pfaffian(PolyMatrix(3, 3)).is_zero());
}

TEST_CASE("polynomial JSON is canonical and round-trips") {
  VarNames names{"x_H", "x_D", "x_C"};
  std::map<std::string, VarId> ids{{"x_H", 0}, {"x_D", 1}, {"x_C", 2}};
  MultiPoly p = x(1).pow(2) - c(4) * x(2) * x(0) + c(1, 2) * x(0);
  auto j = poly_to_json(p, names);
  CHECK(j[0]["monomial"].begin().key() == "x_H");
  CHECK(j[0]["coeff"] == "1/2");
  CHECK(j[1]["monomial"].contains("x_C"));
  CHECK(poly_from_json(j, ids) == p);
  CHECK(poly_to_json(poly_from_json(j, ids), names).dump() == j.dump());
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([{"coeff":"1","monomial":{"y":1}}])"), ids),
                  std::invalid_argument);
}
