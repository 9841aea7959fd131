#include "galcas/liealg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace galcas::lie {

using exact::Integer;
using exact::make_rational;

HalfInt::HalfInt(int twice) : twice_(twice) {
  if (twice < 1 || twice % 2 == 0)
    throw ParameterError("l must be a positive half-odd-integer, got 2l = " + std::to_string(twice));
}

HalfInt HalfInt::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || text.substr(slash + 1) != "2")
    throw ParameterError("l must be written as a/2 with a odd, got '" + std::string(text) + "'");
  auto num = text.substr(0, slash);
  if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParameterError("l must be written as a/2 with a odd, got '" + std::string(text) + "'");
  if (num.size() > 6) throw ParameterError("l is out of range: '" + std::string(text) + "'");
  return HalfInt(std::stoi(std::string(num)));
}

Signature::Signature(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0) throw ParameterError("signature entries must be nonnegative");
  if (p + q < 3) throw ParameterError("d = p + q must be at least 3, got " + std::to_string(p + q));
}

std::string BasisLabel::name() const {
  switch (kind) {
    case Kind::H: return "H";
    case Kind::D: return "D";
    case Kind::C: return "C";
    case Kind::M: return "M";
    case Kind::E: return "E_" + std::to_string(a) + "_" + std::to_string(b);
    case Kind::P: return "P_" + std::to_string(a) + "_" + std::to_string(b);
  }
  return "?";
}

void accumulate(Combination& acc, const Combination& v, const Rational& c) {
  for (const auto& t : v) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const Term& x) { return x.gen == t.gen; });
    if (it == acc.end())
      acc.push_back({t.gen, t.coeff * c});
    else
      it->coeff += t.coeff * c;
  }
  std::erase_if(acc, [](const Term& x) { return sgn(x.coeff) == 0; });
}

Combination normalized(Combination v) {
  Combination out;
  accumulate(out, v, Rational(1));
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.gen < b.gen; });
  return out;
}

LieAlgebra::LieAlgebra(std::vector<BasisLabel> basis, const std::vector<Bracket>& brackets, AlgebraParams params)
    : basis_(std::move(basis)), table_(basis_.size() * basis_.size()), params_(std::move(params)) {
  const std::size_t n = basis_.size();
  for (std::size_t k = 0; k < n; ++k)
    if (!lookup_.emplace(std::tuple{static_cast<int>(basis_[k].kind), basis_[k].a, basis_[k].b}, k).second)
      throw std::invalid_argument("duplicate basis label " + basis_[k].name());
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n) throw std::out_of_range("bracket index out of range");
    if (b.i == b.j) throw std::invalid_argument("bracket of a generator with itself");
    Combination rhs = normalized(b.rhs);
    if (rhs.empty()) continue;
    Combination neg = rhs;
    for (auto& t : neg) t.coeff = -t.coeff;
    table_[b.i * n + b.j] = std::move(rhs);
    table_[b.j * n + b.i] = std::move(neg);
  }
}

std::optional<std::size_t> LieAlgebra::find(const BasisLabel& label) const {
  auto it = lookup_.find(std::tuple{static_cast<int>(label.kind), label.a, label.b});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t LieAlgebra::index_of(const BasisLabel& label) const {
  auto i = find(label);
  if (!i) throw std::out_of_range("no basis element " + label.name());
  return *i;
}

std::vector<std::size_t> LieAlgebra::levi_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (basis_[i].is_levi()) out.push_back(i);
  return out;
}

std::vector<std::size_t> LieAlgebra::radical_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!basis_[i].is_levi()) out.push_back(i);
  return out;
}

exact::VarNames LieAlgebra::coordinate_names() const {
  exact::VarNames names;
  names.reserve(dim());
  for (const auto& b : basis_) names.push_back("x_" + b.name());
  return names;
}

Integer pairing_constant(HalfInt ell, int m) {
  // sign exponent m + l + 1/2 is the integer m + (2l + 1)/2
  const int exponent = m + (ell.twice() + 1) / 2;
  Integer v = exact::factorial(static_cast<unsigned long>(ell.twice() - m)) *
              exact::factorial(static_cast<unsigned long>(m));
  return exponent % 2 == 0 ? v : Integer(-v);
}

std::size_t expected_dim(HalfInt ell, Signature sig, bool extended) {
  const auto d = static_cast<std::size_t>(sig.d());
  return 3 + d * (d - 1) / 2 + static_cast<std::size_t>(ell.twice() + 1) * d + (extended ? 1 : 0);
}

namespace {

using Kind = BasisLabel::Kind;

LieAlgebra build(HalfInt ell, Signature sig, bool extended) {
  const int d = sig.d();
  const int top = ell.twice();  // 2l
  std::vector<BasisLabel> basis{{Kind::H}, {Kind::D}, {Kind::C}};
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) basis.push_back({Kind::E, i, j});
  for (int i = 1; i <= d; ++i)
    for (int n = 0; n <= top; ++n) basis.push_back({Kind::P, n, i});
  if (extended) basis.push_back({Kind::M});

  std::map<std::tuple<Kind, int, int>, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[{basis[k].kind, basis[k].a, basis[k].b}] = k;
  auto idx = [&](Kind k, int a = 0, int b = 0) { return index.at({k, a, b}); };
  const std::size_t H = idx(Kind::H), D = idx(Kind::D), C = idx(Kind::C);

  // E_ab for arbitrary a, b: E_ab = -E_ba, E_aa = 0
  auto e_term = [&](int a, int b, const Rational& c) -> std::optional<Term> {
    if (a == b || sgn(c) == 0) return std::nullopt;
    if (a < b) return Term{idx(Kind::E, a, b), c};
    return Term{idx(Kind::E, b, a), -c};
  };
  auto delta_g = [&](int a, int b) { return a == b ? sig.g(a) : 0; };

  std::vector<LieAlgebra::Bracket> brackets;
  auto add = [&](std::size_t i, std::size_t j, Combination rhs) {
    if (i < j) {
      brackets.push_back({i, j, std::move(rhs)});
    } else {
      for (auto& t : rhs) t.coeff = -t.coeff;
      brackets.push_back({j, i, std::move(rhs)});
    }
  };

  add(D, H, {{H, Rational(2)}});
  add(D, C, {{C, Rational(-2)}});
  add(C, H, {{D, Rational(1)}});

  // so(p,q): [E_ij, E_kl] = g_ik E_jl + g_jl E_ik - g_il E_jk - g_jk E_il
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k)
        for (int l = k + 1; l <= d; ++l) {
          const auto a = idx(Kind::E, i, j), b = idx(Kind::E, k, l);
          if (a >= b) continue;
          Combination rhs;
          for (auto t : {e_term(j, l, delta_g(i, k)), e_term(i, k, delta_g(j, l)),
                         e_term(j, k, -delta_g(i, l)), e_term(i, l, -delta_g(j, k))})
            if (t) rhs.push_back(*t);
          add(a, b, std::move(rhs));
        }

  for (int i = 1; i <= d; ++i)
    for (int n = 0; n <= top; ++n) {
      const auto P = idx(Kind::P, n, i);
      if (n > 0) add(H, P, {{idx(Kind::P, n - 1, i), Rational(-n)}});
      add(D, P, {{P, Rational(top - 2 * n)}});
      if (n < top) add(C, P, {{idx(Kind::P, n + 1, i), Rational(top - n)}});
      // [E_jk, P_{n,i}] = g_ji P_{n,k} - g_ki P_{n,j}
      for (int j = 1; j <= d; ++j)
        for (int k = j + 1; k <= d; ++k) {
          Combination rhs;
          if (j == i) rhs.push_back({idx(Kind::P, n, k), Rational(sig.g(i))});
          if (k == i) rhs.push_back({idx(Kind::P, n, j), Rational(-sig.g(i))});
          if (!rhs.empty()) add(idx(Kind::E, j, k), P, std::move(rhs));
        }
    }

  if (extended) {
    const auto M = idx(Kind::M);
    // [P_{n,k}, P_{m,l}] = g_kl delta_{n+m,2l} I_n M, with I taken at the first index
    for (int k = 1; k <= d; ++k)
      for (int n = 0; n <= top; ++n) {
        const int m = top - n;
        const auto a = idx(Kind::P, n, k), b = idx(Kind::P, m, k);
        if (a >= b) continue;
        add(a, b, {{M, Rational(pairing_constant(ell, n) * sig.g(k))}});
      }
  }

  return LieAlgebra(std::move(basis), brackets, AlgebraParams{ell, sig, extended});
}

// [X, Y] for combinations, accumulated into a dense vector.
void add_bracket(const LieAlgebra& L, const Combination& x, std::size_t y, const Rational& scale,
                 std::vector<Rational>& acc) {
  for (const auto& t : x)
    for (const auto& r : L.bracket(t.gen, y)) acc[r.gen] += scale * t.coeff * r.coeff;
}

std::optional<JacobiViolation> jacobi_triple(const LieAlgebra& L, std::size_t i, std::size_t j, std::size_t k,
                                             std::vector<Rational>& acc) {
  std::fill(acc.begin(), acc.end(), Rational(0));
  const Rational one(1);
  add_bracket(L, L.bracket(i, j), k, one, acc);
  add_bracket(L, L.bracket(j, k), i, one, acc);
  add_bracket(L, L.bracket(k, i), j, one, acc);
  Combination residual;
  for (std::size_t g = 0; g < acc.size(); ++g)
    if (sgn(acc[g]) != 0) residual.push_back({g, acc[g]});
  if (residual.empty()) return std::nullopt;
  return JacobiViolation{i, j, k, std::move(residual)};
}

}  // namespace

LieAlgebra build_extended(HalfInt ell, Signature sig) { return build(ell, sig, true); }

LieAlgebra build_unextended(HalfInt ell, Signature sig) { return build(ell, sig, false); }

std::vector<JacobiViolation> jacobi_check_serial(const LieAlgebra& L) {
  std::vector<JacobiViolation> out;
  std::vector<Rational> acc(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j)
      for (std::size_t k = j + 1; k < L.dim(); ++k)
        if (auto v = jacobi_triple(L, i, j, k, acc)) out.push_back(std::move(*v));
  return out;
}

std::vector<JacobiViolation> jacobi_check(const LieAlgebra& L) {
  const auto n = static_cast<long>(L.dim());
  std::vector<std::vector<JacobiViolation>> per_row(L.dim());
#pragma omp parallel
  {
    std::vector<Rational> acc(L.dim());
#pragma omp for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      for (std::size_t j = ui + 1; j < L.dim(); ++j)
        for (std::size_t k = j + 1; k < L.dim(); ++k)
          if (auto v = jacobi_triple(L, ui, j, k, acc)) per_row[ui].push_back(std::move(*v));
    }
  }
  std::vector<JacobiViolation> out;
  for (auto& row : per_row)
    for (auto& v : row) out.push_back(std::move(v));
  return out;
}

exact::PolyMatrix commutator_matrix(const LieAlgebra& L) {
  exact::PolyMatrix A(L.dim(), L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j)
      for (const auto& t : L.bracket(i, j))
        A(i, j).add_term(exact::Monomial::var(static_cast<exact::VarId>(t.gen)), t.coeff);
  return A;
}

nlohmann::json to_json(const LieAlgebra& L) {
  nlohmann::json j;
  const auto& p = L.params();
  nlohmann::json params = nlohmann::json::object();
  if (p.ell) params["l"] = p.ell->str();
  if (p.sig) {
    params["p"] = p.sig->p();
    params["q"] = p.sig->q();
  }
  params["extended"] = p.extended;
  j["params"] = params;
  j["dim"] = L.dim();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : L.basis()) basis.push_back(b.name());
  j["basis"] = basis;
  nlohmann::json brackets = nlohmann::json::array();
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = a + 1; b < L.dim(); ++b) {
      const auto& rhs = L.bracket(a, b);
      if (rhs.empty()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : rhs) terms.push_back({{"gen", L.basis()[t.gen].name()}, {"coeff", exact::to_string(t.coeff)}});
      brackets.push_back({{"i", L.basis()[a].name()}, {"j", L.basis()[b].name()}, {"rhs", terms}});
    }
  j["brackets"] = brackets;
  return j;
}

}  // namespace galcas::lie
