#include "galcas/invariants.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "galcas/poly_matrix.hpp"

namespace galcas::inv {

namespace {

using lie::BasisLabel;
using Kind = lie::BasisLabel::Kind;

exact::RatMatrix specialize(const lie::LieAlgebra& L, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, const std::vector<Rational>& x) {
  exact::RatMatrix A(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      for (const auto& t : L.bracket(rows[a], cols[b])) A(a, b) += t.coeff * x[t.gen];
  return A;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

RankResult summarize(const std::vector<std::size_t>& ranks) {
  RankResult r;
  r.trials = ranks.size();
  r.rank = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
  r.agreeing = static_cast<std::size_t>(std::count(ranks.begin(), ranks.end(), r.rank));
  return r;
}

RankResult block_rank(const lie::LieAlgebra& L, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols, std::size_t trials, std::uint64_t seed, bool parallel) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  const auto points = random_points(trials, L.dim(), seed);
  std::vector<std::size_t> ranks(trials);
  const auto n = static_cast<long>(trials);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long t = 0; t < n; ++t) ranks[t] = exact::rank(specialize(L, rows, cols, points[t]));
  return summarize(ranks);
}

void mpq_class_pow(Rational& out, const Rational& x, std::uint32_t e) {
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
}

MultiPoly x(std::size_t v) { return MultiPoly::var(static_cast<VarId>(v)); }

const envelope::PbwElement& image_of(const vcopy::VirtualCopy& vc, const BasisLabel& label) {
  return vc.image(vc.algebra->index_of(label));
}

// sum of the principal minors of order k
MultiPoly principal_minor_sum(const exact::PolyMatrix& B, std::size_t k) {
  const std::size_t n = B.rows();
  MultiPoly sum;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) idx.push_back(i);
    exact::PolyMatrix sub(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) sub(a, b) = B(idx[a], idx[b]);
    sum += exact::determinant(sub);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return sum;
}

std::vector<std::size_t> sub_basis(const lie::LieAlgebra& L) {
  const auto& ell = *L.params().ell;
  const auto& sig = *L.params().sig;
  std::vector<std::size_t> idx{L.index_D(), L.index_H(), L.index_C()};
  for (int k = 1; k <= sig.d(); ++k)
    for (int s = 0; s <= ell.twice(); ++s) idx.push_back(L.index_P(s, k));
  return idx;
}

}  // namespace

MultiPoly DiffOperator::apply(const MultiPoly& f) const {
  // single pass: for x^m with x_v^e in m, emit c e (m / x_v) * coeff_v
  std::map<VarId, const MultiPoly*> by_target;
  for (const auto& t : terms) by_target.emplace(t.target, &t.coeff);
  MultiPoly out;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      auto it = by_target.find(v);
      if (it == by_target.end()) continue;
      std::vector<exact::Monomial::Factor> fs;
      fs.reserve(m.factors().size());
      for (const auto& fac : m.factors()) {
        if (fac.first != v)
          fs.push_back(fac);
        else if (fac.second > 1)
          fs.emplace_back(v, fac.second - 1);
      }
      const exact::Monomial reduced(std::move(fs));
      const Rational ce = c * e;
      for (const auto& [km, kc] : it->second->terms()) out.add_term(reduced * km, ce * kc);
    }
  }
  return out;
}

std::vector<DiffOperator> realize(const lie::LieAlgebra& L) {
  std::vector<DiffOperator> ops(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) {
      const auto& br = L.bracket(i, j);
      if (br.empty()) continue;
      MultiPoly c;
      for (const auto& t : br) c += x(t.gen) * t.coeff;
      ops[i].terms.push_back({std::move(c), static_cast<VarId>(j)});
    }
  return ops;
}

std::vector<std::vector<Rational>> random_points(std::size_t count, std::size_t dim, std::uint64_t seed, long bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<std::vector<Rational>> pts(count, std::vector<Rational>(dim));
  for (auto& p : pts)
    for (auto& v : p) v = Rational(dist(rng));
  return pts;
}

RankResult generic_rank(const lie::LieAlgebra& L, std::size_t trials, std::uint64_t seed) {
  const auto all = all_indices(L.dim());
  return block_rank(L, all, all, trials, seed, true);
}

RankResult generic_rank_serial(const lie::LieAlgebra& L, std::size_t trials, std::uint64_t seed) {
  const auto all = all_indices(L.dim());
  return block_rank(L, all, all, trials, seed, false);
}

RankResult generic_rank_block(const lie::LieAlgebra& L, const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols, std::size_t trials, std::uint64_t seed) {
  return block_rank(L, rows, cols, trials, seed, true);
}

InvariantReport bb_count(const lie::LieAlgebra& L, std::size_t trials, std::uint64_t seed) {
  const auto r = generic_rank(L, trials, seed);
  InvariantReport rep;
  const auto& p = L.params();
  if (p.ell) rep.ell = p.ell->str();
  if (p.sig) {
    rep.p = p.sig->p();
    rep.q = p.sig->q();
  }
  rep.extended = p.extended;
  rep.dim = L.dim();
  rep.rank = r.rank;
  rep.N = L.dim() - r.rank;
  rep.j0 = r.rank / 2;
  rep.trials = r.trials;
  rep.agreeing = r.agreeing;
  rep.seed = seed;
  return rep;
}

MultiPoly analytic(const envelope::PbwElement& image) { return image.symbol().homogeneous_part(2); }

MultiPoly casimir_sl2(const vcopy::VirtualCopy& vc) {
  const MultiPoly d = analytic(image_of(vc, {Kind::D}));
  const MultiPoly h = analytic(image_of(vc, {Kind::H}));
  const MultiPoly c = analytic(image_of(vc, {Kind::C}));
  return d * d - Rational(4) * c * h;
}

std::vector<SoInvariant> casimir_so(const vcopy::VirtualCopy& vc) {
  const auto& L = *vc.algebra;
  const auto& sig = *L.params().sig;
  const std::size_t d = static_cast<std::size_t>(sig.d());
  exact::PolyMatrix E(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      E(a, b) = analytic(image_of(vc, {Kind::E, static_cast<int>(a + 1), static_cast<int>(b + 1)}));
      E(b, a) = -E(a, b);
    }
  exact::PolyMatrix B(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (a != b) B(a, b) = E(a, b) * Rational(-sig.g(static_cast<int>(b + 1)));

  std::vector<SoInvariant> out;
  const Rational sign(d % 2 == 0 ? 1 : -1);
  for (std::size_t k = 1; k <= d / 2; ++k) {
    if (d % 2 == 0 && k == d / 2) {
      out.push_back({exact::pfaffian(E), static_cast<int>(d / 2), "pfaffian"});
    } else {
      out.push_back({principal_minor_sum(B, 2 * k) * sign, static_cast<int>(2 * k), "charpoly"});
    }
  }
  return out;
}

bool invariance_check(const MultiPoly& F, const std::vector<DiffOperator>& ops) {
  for (const auto& op : ops)
    if (!op.apply(F).is_zero()) return false;
  return true;
}

bool invariance_check_serial(const MultiPoly& F, const lie::LieAlgebra& L) { return invariance_check(F, realize(L)); }

bool invariance_check(const MultiPoly& F, const lie::LieAlgebra& L) {
  const auto ops = realize(L);
  const auto n = static_cast<long>(ops.size());
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (long i = 0; i < n; ++i) ok = ok && ops[i].apply(F).is_zero();
  return ok;
}

exact::RatVector gradient_at(const MultiPoly& f, const std::vector<Rational>& pt) {
  exact::RatVector g(pt.size());
  std::map<std::pair<VarId, std::uint32_t>, Rational> powers;
  auto power = [&](VarId v, std::uint32_t e) -> const Rational& {
    auto [it, inserted] = powers.try_emplace({v, e});
    if (inserted) mpq_class_pow(it->second, pt[v], e);
    return it->second;
  };
  for (const auto& [m, c] : f.terms())
    for (const auto& [v, e] : m.factors()) {
      if (v >= pt.size()) throw std::out_of_range("polynomial variable outside the Jacobian range");
      Rational t = c * e * power(v, e - 1);
      for (const auto& [w, k] : m.factors())
        if (w != v) t *= power(w, k);
      g[v] += t;
    }
  return g;
}

std::size_t jacobian_rank(const std::vector<MultiPoly>& fs, std::size_t nvars, std::uint64_t seed) {
  const auto pt = random_points(1, nvars, seed, 1000)[0];
  std::vector<exact::RatVector> rows;
  for (const auto& f : fs) rows.push_back(gradient_at(f, pt));
  return rows.empty() ? 0 : exact::rank(exact::RatMatrix::from_rows(rows));
}

exact::PolyMatrix matrix_A(const lie::LieAlgebra& L, Border border) {
  if (!L.params().ell || !L.params().sig || !L.has_center_generator())
    throw std::invalid_argument("matrix A needs the centrally extended algebra");
  const auto idx = sub_basis(L);
  const std::size_t n0 = idx.size(), b = n0;
  exact::PolyMatrix A(n0 + 1, n0 + 1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j)
      for (const auto& t : L.bracket(idx[i], idx[j])) A(i, j) += x(t.gen) * t.coeff;
  for (std::size_t i = 0; i < n0; ++i) {
    Rational c = i < 3 ? Rational(border == Border::SlNegated ? -1 : 1) : exact::make_rational(1, 2);
    A(i, b) = x(idx[i]) * c;
    A(b, i) = -A(i, b);
  }
  return A;
}

MultiPoly det_A(const lie::LieAlgebra& L, Border border) { return exact::determinant(matrix_A(L, border)); }

Rational printed_det_constant(lie::HalfInt ell, lie::Signature sig) {
  exact::Integer prod(1);
  for (int s = 1; s <= sig.d(); ++s)
    for (int m = 0; m <= ell.twice(); ++m)
      prod *= exact::factorial(static_cast<unsigned long>(ell.twice() - m)) *
              exact::factorial(static_cast<unsigned long>(m));
  return Rational(prod);
}

DetIdentityReport verify_det_identity(const lie::LieAlgebra& L, const vcopy::VirtualCopy& vc, std::size_t samples,
                       std::uint64_t seed) {
  const auto& ell = *L.params().ell;
  const auto& sig = *L.params().sig;
  const MultiPoly c4 = casimir_sl2(vc);
  const int e = ell.twice() * sig.d() + sig.d() - 4;
  const auto pts = random_points(samples, L.dim(), seed, 1000);
  const std::size_t m = L.index_M();

  DetIdentityReport last;
  for (Border border : {Border::Plain, Border::SlNegated}) {
    DetIdentityReport rep;
    rep.border = border == Border::Plain ? "plain" : "sl2-negated";
    rep.m_exponent = e;
    rep.samples = samples;
    rep.seed = seed;
    rep.printed_kappa = printed_det_constant(ell, sig);
    const auto A = matrix_A(L, border);
    rep.order = A.rows();
    rep.consistent = samples > 0;
    std::size_t used = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      const Rational det = exact::determinant(A.evaluate(pts[s]));
      Rational target = c4.evaluate(pts[s]);
      target *= target;
      Rational xm(1);
      for (int k = 0; k < e; ++k) xm *= pts[s][m];
      target *= xm;
      if (sgn(target) == 0) {
        rep.notes.push_back("sample " + std::to_string(s) + " skipped: x_M^e C'_4^2 vanishes");
        if (sgn(det) != 0) rep.consistent = false;
        continue;
      }
      const Rational k = det / target;
      ++used;
      if (!rep.kappa)
        rep.kappa = k;
      else if (*rep.kappa != k)
        rep.consistent = false;
    }
    if (used == 0) rep.consistent = false;
    rep.matches_printed = rep.kappa && *rep.kappa == rep.printed_kappa;
    if (rep.consistent) return rep;
    last = std::move(rep);
  }
  return last;
}

nlohmann::json to_json(const InvariantReport& r) {
  return {{"l", r.ell},         {"p", r.p},   {"q", r.q},       {"extended", r.extended},
          {"dim", r.dim},       {"N", r.N},   {"rank", r.rank}, {"j0", r.j0},
          {"trials", r.trials}, {"agreeing_trials", r.agreeing}, {"seed", r.seed}};
}

nlohmann::json to_json(const DetIdentityReport& r) {
  return {{"border", r.border},
          {"order", r.order},
          {"m_exponent", r.m_exponent},
          {"samples", r.samples},
          {"seed", r.seed},
          {"kappa", r.kappa ? exact::to_string(*r.kappa) : "undetermined"},
          {"consistent", r.consistent},
          {"printed_kappa", exact::to_string(r.printed_kappa)},
          {"matches_printed", r.matches_printed},
          {"notes", r.notes}};
}

}  // namespace galcas::inv
