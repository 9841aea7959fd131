#include "galcas/reduction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace galcas::red {

namespace {

using Kind = lie::BasisLabel::Kind;
using exact::Monomial;

MultiPoly uvar(std::size_t i) { return MultiPoly::var(static_cast<VarId>(i)); }

// rows = polynomials, columns = monomials appearing in any of them
exact::RatMatrix coefficient_matrix(const std::vector<MultiPoly>& fs) {
  std::map<Monomial, std::size_t> col;
  for (const auto& f : fs)
    for (const auto& [m, c] : f.terms()) col.try_emplace(m, 0);
  std::size_t k = 0;
  for (auto& [m, idx] : col) idx = k++;
  exact::RatMatrix A(fs.size(), col.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const auto& [m, c] : fs[i].terms()) A(i, col.at(m)) = c;
  return A;
}

// multisets of size r over 0..K-1 with total weight zero
void weight_zero_monomials(const std::vector<int>& w, int r, std::size_t start, int weight,
                           std::vector<Monomial::Factor>& cur, std::vector<Monomial>& out) {
  if (r == 0) {
    if (weight == 0) out.emplace_back(cur);
    return;
  }
  for (std::size_t i = start; i < w.size(); ++i) {
    const bool same = !cur.empty() && cur.back().first == i;
    if (same)
      ++cur.back().second;
    else
      cur.emplace_back(static_cast<VarId>(i), 1);
    weight_zero_monomials(w, r - 1, i, weight + w[i], cur, out);
    if (same)
      --cur.back().second;
    else
      cur.pop_back();
  }
}

}  // namespace

const inv::DiffOperator& ReducedSystem::op(Kind kind) const {
  for (std::size_t k = 0; k < levi.size(); ++k)
    if (algebra.basis()[levi[k]].kind == kind) return operators[k];
  throw std::out_of_range("no such operator in the reduced system");
}

ReducedSystem build_reduced_system(lie::HalfInt ell, lie::Signature sig, std::size_t trials, std::uint64_t seed) {
  ReducedSystem S{lie::build_unextended(ell, sig), {}, {}, {}, 0, 0, 0, 0};
  const auto& L = S.algebra;
  S.levi = {L.index_D(), L.index_H(), L.index_C()};
  for (auto i : L.levi_indices())
    if (L.basis()[i].kind == Kind::E) S.levi.push_back(i);
  for (std::size_t k = 0; k < L.dim(); ++k)
    if (L.basis()[k].kind == Kind::P) S.pvars.push_back(k);

  const auto full = inv::realize(L);
  for (auto i : S.levi) {
    inv::DiffOperator op;
    for (const auto& t : full[i].terms)
      if (L.basis()[t.target].kind == Kind::P) op.terms.push_back(t);
    S.operators.push_back(std::move(op));
  }
  const auto r = inv::generic_rank_block(L, S.levi, S.pvars, trials, seed);
  S.rank = r.rank;
  S.trials = r.trials;
  S.agreeing = r.agreeing;
  S.N1 = S.pvars.size() - S.rank;
  return S;
}

long closed_rank(lie::HalfInt ell, int d) {
  const long t = ell.twice();
  return (2 + d) + (t * (2L * d - 3) - t * t) / 2;
}

long stable_N1(lie::HalfInt ell) {
  const long t = ell.twice();
  return (t * t + 3 * t - 4) / 2;
}

std::string closed_count_branch(lie::HalfInt ell, int d) {
  if (ell.twice() == 1) return "l=1/2";
  return d <= ell.twice() + 2 ? "d<=2l+2" : "d>=2l+3";
}

long closed_count(lie::HalfInt ell, int d) {
  const long t = ell.twice();
  if (t == 1) return 1 + d / 2;
  if (d <= t + 2) return (2 * t * d + 3L * d - 1L * d * d - 6) / 2;
  return (t * t + 2 * t - 5) / 2 + d / 2;
}

exact::VarNames PhiBasis::u_names() const {
  exact::VarNames names;
  for (std::size_t i = 0; i < elements.size(); ++i) names.push_back("u" + std::to_string(i + 1));
  return names;
}

PhiBasis phi_basis(const ReducedSystem& S) {
  const auto& L = S.algebra;
  const auto& sig = *L.params().sig;
  const int twice = L.params().ell->twice();
  PhiBasis phi;
  for (int n = 0; n <= twice; ++n)
    for (int s = 0; s <= twice - n; ++s) {
      MultiPoly f;
      for (int k = 1; k <= sig.d(); ++k) {
        const Rational w(sig.g(1) * sig.g(k));  // g_11 / g_kk with g = +-1
        f += MultiPoly::var(static_cast<VarId>(L.index_P(n, k))) *
             MultiPoly::var(static_cast<VarId>(L.index_P(n + s, k))) * w;
      }
      phi.labels.emplace_back(n, s);
      phi.elements.push_back(std::move(f));
    }
  return phi;
}

Sl2Action sl2_action_on_phi(const ReducedSystem& S, const PhiBasis& phi) {
  const std::size_t K = phi.size();
  // columns = Phi_j over the monomials of all Phi
  const exact::RatMatrix coeffs = coefficient_matrix(phi.elements);
  std::map<Monomial, std::size_t> row;
  {
    std::size_t k = 0;
    std::map<Monomial, int> seen;
    for (const auto& f : phi.elements)
      for (const auto& [m, c] : f.terms()) seen.try_emplace(m, 0);
    for (auto& [m, x] : seen) row.emplace(m, k++);
  }
  const exact::RatMatrix basis = coeffs.transpose();
  if (exact::rank(basis) != K) throw ClosureError("the Phi are linearly dependent");

  auto express = [&](const inv::DiffOperator& op, const char* name) {
    exact::RatMatrix out(K, K);
    for (std::size_t i = 0; i < K; ++i) {
      const MultiPoly img = op.apply(phi.elements[i]);
      exact::RatVector rhs(row.size());
      for (const auto& [m, c] : img.terms()) {
        auto it = row.find(m);
        if (it == row.end())
          throw ClosureError(std::string(name) + "(u" + std::to_string(i + 1) + ") leaves the span of the Phi");
        rhs[it->second] = c;
      }
      auto sol = exact::solve(basis, rhs);
      if (!sol) throw ClosureError(std::string(name) + "(u" + std::to_string(i + 1) + ") leaves the span of the Phi");
      for (std::size_t j = 0; j < K; ++j) out(i, j) = (*sol)[j];
    }
    return out;
  };
  Sl2Action act{express(S.op(Kind::D), "D'"), express(S.op(Kind::H), "H'"), express(S.op(Kind::C), "C'"), {}};
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j)
      if (i != j && sgn(act.D(i, j)) != 0) throw ClosureError("D' is not diagonal on the Phi");
    const Rational w = act.D(i, i);
    if (w.get_den() != 1) throw ClosureError("non-integral D' weight");
    act.weights.push_back(static_cast<int>(w.get_num().get_si()));
  }
  // the E' annihilate every Phi
  for (std::size_t k = 3; k < S.operators.size(); ++k)
    for (const auto& f : phi.elements)
      if (!S.operators[k].apply(f).is_zero()) throw ClosureError("a rotation operator does not annihilate a Phi");
  return act;
}

MultiPoly apply_u(const exact::RatMatrix& action, const MultiPoly& f) {
  MultiPoly out;
  for (std::size_t i = 0; i < action.rows(); ++i) {
    MultiPoly d = f.diff(static_cast<VarId>(i));
    if (d.is_zero()) continue;
    MultiPoly img;
    for (std::size_t j = 0; j < action.cols(); ++j)
      if (sgn(action(i, j)) != 0) img += uvar(j) * action(i, j);
    out += d * img;
  }
  return out;
}

MultiPoly back_substitute(const MultiPoly& u_poly, const PhiBasis& phi) {
  std::map<std::pair<VarId, std::uint32_t>, MultiPoly> powers;
  auto power = [&](VarId v, std::uint32_t e) -> const MultiPoly& {
    auto [it, inserted] = powers.try_emplace({v, e});
    if (inserted) it->second = phi.elements.at(v).pow(e);
    return it->second;
  };
  MultiPoly out;
  for (const auto& [m, c] : u_poly.terms()) {
    MultiPoly t = MultiPoly::constant(c);
    for (const auto& [v, e] : m.factors()) t *= power(v, e);
    out += t;
  }
  return out;
}

std::size_t linear_rank(const std::vector<MultiPoly>& fs) {
  if (fs.empty()) return 0;
  return exact::rank(coefficient_matrix(fs));
}

bool in_span(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
  std::vector<MultiPoly> all = basis;
  all.push_back(f);
  return linear_rank(all) == linear_rank(basis);
}

AnsatzSolution solve_ansatz(const ReducedSystem& S, const PhiBasis& phi, const Sl2Action& act, int r) {
  if (r < 1) throw std::invalid_argument("ansatz degree must be positive");
  AnsatzSolution sol;
  sol.degree = r;
  std::vector<Monomial::Factor> cur;
  weight_zero_monomials(act.weights, r, 0, 0, cur, sol.monomials);

  std::map<Monomial, std::size_t> row;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(sol.monomials.size());
  for (std::size_t c = 0; c < sol.monomials.size(); ++c) {
    const MultiPoly m = MultiPoly::term(sol.monomials[c], Rational(1));
    std::size_t block = 0;
    for (const auto* A : {&act.D, &act.H, &act.C}) {
      const MultiPoly img = apply_u(*A, m);
      for (const auto& [mono, coeff] : img.terms()) {
        // tag rows by operator through an extra factor on a spare variable
        Monomial tagged = mono * Monomial::var(static_cast<VarId>(phi.size() + block));
        auto [it, inserted] = row.try_emplace(tagged, row.size());
        cols[c].emplace_back(it->second, coeff);
      }
      ++block;
    }
  }
  exact::RatMatrix A(row.size(), sol.monomials.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [rw, coeff] : cols[c]) A(rw, c) += coeff;

  const auto ns = sol.monomials.empty() ? std::vector<exact::RatVector>{} : exact::nullspace(A);
  for (const auto& v : ns) {
    MultiPoly u;
    for (std::size_t c = 0; c < v.size(); ++c) u.add_term(sol.monomials[c], v[c]);
    sol.u_polys.push_back(u);
    sol.p_polys.push_back(back_substitute(u, phi));
  }
  sol.verified = std::all_of(sol.p_polys.begin(), sol.p_polys.end(),
                             [&](const MultiPoly& f) { return inv::invariance_check(f, S.operators); });
  sol.p_rank = linear_rank(sol.p_polys);
  return sol;
}

std::size_t quartics_modulo_products(const AnsatzSolution& r2, const AnsatzSolution& r4) {
  std::vector<MultiPoly> products;
  for (std::size_t i = 0; i < r2.p_polys.size(); ++i)
    for (std::size_t j = i; j < r2.p_polys.size(); ++j) products.push_back(r2.p_polys[i] * r2.p_polys[j]);
  std::vector<MultiPoly> all = products;
  all.insert(all.end(), r4.p_polys.begin(), r4.p_polys.end());
  return linear_rank(all) - linear_rank(products);
}

CompleteSet complete_set(lie::HalfInt ell, lie::Signature sig, int rmax, std::size_t trials, std::uint64_t seed) {
  if (rmax < 2) throw std::invalid_argument("rmax must be at least 2");
  const auto S = build_reduced_system(ell, sig, trials, seed);
  const auto phi = phi_basis(S);
  const auto act = sl2_action_on_phi(S, phi);
  CompleteSet out;
  out.N1 = S.N1;
  out.N = inv::bb_count(S.algebra, trials, seed).N;
  const auto pt = inv::random_points(1, S.algebra.dim(), seed, 1000)[0];
  std::vector<exact::RatVector> rows;
  for (int r = 2; r <= rmax; ++r) {
    const auto sol = solve_ansatz(S, phi, act, r);
    out.all_verified = out.all_verified && sol.verified;
    for (const auto& f : sol.p_polys) {
      rows.push_back(inv::gradient_at(f, pt));
      if (exact::rank(exact::RatMatrix::from_rows(rows)) == rows.size()) {
        out.invariants.push_back(f);
        out.degrees.push_back(r);
      } else {
        rows.pop_back();
      }
    }
  }
  out.complete = out.all_verified && out.invariants.size() == out.N1 && out.N1 == out.N;
  out.verdict = out.complete ? "complete" : "incomplete";
  return out;
}

nlohmann::json to_json(const ReducedSystem& S) {
  const auto& p = S.algebra.params();
  return {{"l", p.ell->str()},
          {"p", p.sig->p()},
          {"q", p.sig->q()},
          {"operators", S.operators.size()},
          {"variables", S.pvars.size()},
          {"rank", S.rank},
          {"N1", S.N1},
          {"trials", S.trials},
          {"agreeing_trials", S.agreeing}};
}

}  // namespace galcas::red
