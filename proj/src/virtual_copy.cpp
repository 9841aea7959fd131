#include "galcas/virtual_copy.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "galcas/matrix.hpp"

namespace galcas::vcopy {

namespace {

using lie::BasisLabel;
using Kind = lie::BasisLabel::Kind;
using envelope::Word;

constexpr std::size_t kMaxRendered = 240;

std::uint16_t u16(std::size_t i) { return static_cast<std::uint16_t>(i); }

std::string truncated(const PbwElement& e, const lie::LieAlgebra& L) {
  std::string s = e.to_string(L);
  if (s.size() > kMaxRendered) s = s.substr(0, kMaxRendered) + " ...";
  return s;
}

void record(CheckResult& check, const std::string& where, const PbwElement& residual,
            const lie::LieAlgebra& L) {
  ++check.evaluated;
  if (residual.is_zero()) return;
  check.pass = false;
  check.residuals.push_back({where, residual.size(), truncated(residual, L)});
}

// ad D eigenvalue of a Levi generator
int d_weight(const BasisLabel& b) {
  switch (b.kind) {
    case Kind::H: return 2;
    case Kind::C: return -2;
    default: return 0;
  }
}

std::vector<std::size_t> p_indices(const lie::LieAlgebra& L) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < L.dim(); ++k)
    if (L.basis()[k].kind == Kind::P) out.push_back(k);
  return out;
}

void require_center(const lie::LieAlgebra& L) {
  if (!L.has_center_generator() || !L.params().ell)
    throw CopyError("virtual copies need the centrally extended algebra");
}

// columns of the ansatz: X M, then P_a P_b (a <= b) with n_a + n_b = 2l - w/2
std::vector<Word> ansatz_words(const lie::LieAlgebra& L, std::size_t x) {
  const int twice = L.params().ell->twice();
  const int target = twice - d_weight(L.basis()[x]) / 2;
  const std::size_t m = L.index_M();
  std::vector<Word> cols{{u16(std::min(x, m)), u16(std::max(x, m))}};
  const auto ps = p_indices(L);
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a; b < ps.size(); ++b)
      if (L.basis()[ps[a]].a + L.basis()[ps[b]].a == target) cols.push_back({u16(ps[a]), u16(ps[b])});
  return cols;
}

exact::RatMatrix radical_system(const lie::LieAlgebra& L, Envelope& env, const std::vector<Word>& cols) {
  std::map<std::pair<std::size_t, Word>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const PbwElement col = PbwElement::monomial(cols[c]);
    for (auto y : p_indices(L)) {
      const PbwElement r = env.commutator(col, env.generator(y));
      for (const auto& [w, coeff] : r.terms()) {
        auto [it, inserted] = row_of.try_emplace({y, w}, row_of.size());
        entries[c].emplace_back(it->second, coeff);
      }
    }
  }
  exact::RatMatrix A(row_of.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, coeff] : entries[c]) A(r, c) += coeff;
  return A;
}

PbwElement lift(const VirtualCopy& vc, std::size_t i, std::size_t j) {
  PbwElement out;
  for (const auto& t : vc.algebra->bracket(i, j)) out += vc.image(t.gen) * t.coeff;
  return out;
}

// [X'_i, X'_j] - M lift([X_i, X_j])
PbwElement bracket_residual(const VirtualCopy& vc, Envelope& env, std::size_t i, std::size_t j) {
  return env.commutator(vc.image(i), vc.image(j)) - env.product(vc.f, lift(vc, i, j));
}

// the part of an image built from P generators only
PbwElement p_part(const PbwElement& e, const lie::LieAlgebra& L) {
  PbwElement out;
  for (const auto& [w, c] : e.terms()) {
    if (w.empty()) continue;
    bool only_p = std::all_of(w.begin(), w.end(), [&](auto g) { return L.basis()[g].kind == Kind::P; });
    if (only_p) out.add_term(w, c);
  }
  return out;
}

GeneratorComparison compare(const std::string& name, const PbwElement& closed, const PbwElement& solver) {
  GeneratorComparison g{name, "differs", "", 0};
  if (closed == solver) {
    g.relation = "equal";
    g.ratio = "1";
    return g;
  }
  std::set<Word> words;
  for (const auto& [w, c] : closed.terms()) words.insert(w);
  for (const auto& [w, c] : solver.terms()) words.insert(w);
  std::optional<Rational> ratio;
  bool proportional = !solver.is_zero() && !closed.is_zero();
  for (const auto& w : words) {
    const Rational a = closed.coeff(w), b = solver.coeff(w);
    if (a != b) ++g.differing_terms;
    if (!proportional) continue;
    if (sgn(a) == 0 || sgn(b) == 0) {
      proportional = false;
      continue;
    }
    Rational r = a / b;
    if (!ratio) ratio = r;
    else if (*ratio != r) proportional = false;
  }
  if (proportional && ratio) {
    g.relation = "proportional";
    g.ratio = exact::to_string(*ratio);
  }
  return g;
}

}  // namespace

std::string image_name(const lie::LieAlgebra& L, std::size_t levi_index) {
  const auto& b = L.basis()[levi_index];
  switch (b.kind) {
    case Kind::H: return "H~";
    case Kind::D: return "D~";
    case Kind::C: return "C~";
    case Kind::E: return "E~_" + std::to_string(b.a) + "_" + std::to_string(b.b);
    default: return b.name();
  }
}

std::size_t radical_solution_dimension(const lie::LieAlgebra& L, Envelope& env, std::size_t levi_index) {
  require_center(L);
  return exact::nullspace(radical_system(L, env, ansatz_words(L, levi_index))).size();
}

VirtualCopy solve_copy(const lie::LieAlgebra& L, Envelope& env) {
  require_center(L);
  VirtualCopy vc;
  vc.algebra = &L;
  vc.source = CopySource::Solver;
  const std::size_t m = L.index_M();
  vc.f = PbwElement::generator(m);
  const auto levi = L.levi_indices();

  for (auto x : levi) {
    const auto cols = ansatz_words(L, x);
    const auto ns = exact::nullspace(radical_system(L, env, cols));
    if (ns.size() != 1)
      throw CopyError("solution space for " + image_name(L, x) + " has dimension " + std::to_string(ns.size()));
    const auto& v = ns[0];
    if (sgn(v[0]) == 0) throw CopyError("solution for " + image_name(L, x) + " has no X M term");
    PbwElement img;
    for (std::size_t c = 0; c < cols.size(); ++c) img.add_term(cols[c], v[c] / v[0]);
    vc.images.emplace(x, std::move(img));
  }

  // The bracket relations hold up to multiples of M^2; shifting X'_k by lambda_k M
  // changes the residual of (i, j) by -sum_k C_ij^k lambda_k M^2.
  const Word mm{u16(m), u16(m)};
  std::vector<exact::RatVector> rows;
  exact::RatVector rhs;
  for (std::size_t a = 0; a < levi.size(); ++a)
    for (std::size_t b = a + 1; b < levi.size(); ++b) {
      const PbwElement r = bracket_residual(vc, env, levi[a], levi[b]);
      for (const auto& [w, c] : r.terms())
        if (w != mm)
          throw CopyError("bracket [" + image_name(L, levi[a]) + ", " + image_name(L, levi[b]) +
                          "] has a residual beyond M^2");
      exact::RatVector row(levi.size());
      for (const auto& t : L.bracket(levi[a], levi[b])) {
        auto pos = std::find(levi.begin(), levi.end(), t.gen) - levi.begin();
        row[pos] += t.coeff;
      }
      rows.push_back(std::move(row));
      rhs.push_back(r.coeff(mm));
    }
  const auto lambda = exact::solve(exact::RatMatrix::from_rows(rows), rhs);
  if (!lambda) throw CopyError("no M-multiples satisfy the bracket relations");
  for (std::size_t k = 0; k < levi.size(); ++k)
    vc.images.at(levi[k]).add_term({u16(m)}, (*lambda)[k]);

  vc.report = verify_copy(vc, env);
  return vc;
}

VerificationReport verify_copy(const VirtualCopy& vc, Envelope& env) {
  const auto& L = *vc.algebra;
  VerificationReport rep;
  const auto ps = p_indices(L);
  for (const auto& [x, img] : vc.images) {
    for (auto y : ps)
      record(rep.radical, "[" + image_name(L, x) + ", " + L.basis()[y].name() + "]",
             env.commutator(img, env.generator(y)), L);
    record(rep.center, "[" + image_name(L, x) + ", M]", env.commutator(img, vc.f), L);
  }
  const auto levi = L.levi_indices();
  for (std::size_t a = 0; a < levi.size(); ++a)
    for (std::size_t b = a + 1; b < levi.size(); ++b)
      record(rep.brackets, "[" + image_name(L, levi[a]) + ", " + image_name(L, levi[b]) + "]",
             bracket_residual(vc, env, levi[a], levi[b]), L);
  const std::size_t h = L.index_H(), d = L.index_D(), c = L.index_C();
  for (auto [i, j] : {std::pair{d, h}, std::pair{d, c}, std::pair{c, h}})
    record(rep.sl2, "[" + image_name(L, i) + ", " + image_name(L, j) + "]", bracket_residual(vc, env, i, j), L);
  return rep;
}

std::string ClosedFormVariant::describe() const {
  std::string s = bound_from_ell ? "q=l-1/2" : "q=signature";
  s += sqrt2_squared ? ", sqrt2->2" : ", sqrt2->1";
  s += negate_quadratic ? ", quadratic negated" : "";
  s += e_full_range ? ", E sum to 2l" : ", E sum to l-1/2";
  s += mu1_rederived ? ", mu1 re-derived" : "";
  return s;
}

std::vector<ClosedFormVariant> closed_form_variants() {
  std::vector<ClosedFormVariant> out;
  for (bool mu : {false, true})
    for (bool b : {true, false})
      for (bool r : {false, true}) {
        if (mu && r) continue;
        for (bool n : {false, true})
          for (bool e : {false, true}) out.push_back({b, r, n, e, mu});
      }
  return out;
}

VirtualCopy closed_form_variant(const lie::LieAlgebra& L, Envelope& env, const ClosedFormVariant& v) {
  require_center(L);
  if (!L.params().sig) throw CopyError("closed-form copy needs the signature");
  const int twice = L.params().ell->twice();
  const auto sig = *L.params().sig;
  const int q = v.bound_from_ell ? L.params().ell->floor() : sig.q();
  const std::size_t m = L.index_M();

  auto fact = [](int n) { return Rational(exact::factorial(static_cast<unsigned long>(n))); };
  auto sign = [](int e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); };
  const Rational flip = v.negate_quadratic ? Rational(-1) : Rational(1);

  // mu^1 without its sqrt(2): 2^[s/2] * products; optionally times 2
  auto mu1 = [&](int s) {
    if (v.mu1_rederived) return Rational(Rational(2 * q + 1 - 2 * s) / (fact(s) * fact(2 * q + 1 - s)));
    Rational r(v.sqrt2_squared ? 2 : 1);
    r *= Rational(exact::Integer(1) << (s / 2));
    for (int a = 0; a <= (s + 1) / 2 - 1; ++a) r *= Rational(q - s / 2 - a);
    for (int b = s + 1 - s / 2; b <= s; ++b) r *= Rational(2 * q + 3 - 2 * b);
    return r;
  };
  auto mu2 = [&](int s) -> Rational {
    if (2 * q - s < 0) return Rational(0);
    return 1 / (fact(s) * fact(2 * q - s));
  };
  auto mu3 = [&](int s) -> Rational {
    if (s == 0 || 2 * q + 1 - s < 0) return Rational(0);
    return 1 / (fact(s - 1) * fact(2 * q + 1 - s));
  };
  auto valid = [&](int n) { return n >= 0 && n <= twice; };
  // c * P_{n1,i} P_{n2,j} in the printed order
  auto pp = [&](PbwElement& acc, int n1, int i, int n2, int j, const Rational& c) {
    if (!valid(n1) || !valid(n2) || sgn(c) == 0) return;
    const std::uint16_t w[2] = {u16(L.index_P(n1, i)), u16(L.index_P(n2, j))};
    acc += env.ordered_product(w) * c;
  };
  auto with_m = [&](std::size_t x) { return env.product(env.generator(x), env.generator(m)); };

  VirtualCopy vc;
  vc.algebra = &L;
  vc.source = CopySource::ClosedForm;
  vc.f = PbwElement::generator(m);

  PbwElement D = with_m(L.index_D()), H = with_m(L.index_H()), C = with_m(L.index_C());
  for (int i = 1; i <= sig.d(); ++i) {
    const Rational g(sig.g(i));
    for (int s = 0; s <= q; ++s) pp(D, s, i, twice - s, i, flip * sign(s + q - 1) * mu1(s) * g);
    for (int s = 0; s <= q - 1; ++s) pp(H, s, i, twice - 1 - s, i, flip * sign(s + q - 1) * mu2(s) * g);
    for (int s = 0; s <= q; ++s) pp(C, s, i, twice + 1 - s, i, flip * sign(s + q) * mu3(s) * g);
    if (q >= 0) {
      const Rational sq = flip * g / (2 * fact(q) * fact(q));
      pp(H, q, i, q, i, -sq);
      pp(C, q + 1, i, q + 1, i, -sq);
    }
  }
  vc.images.emplace(L.index_D(), std::move(D));
  vc.images.emplace(L.index_H(), std::move(H));
  vc.images.emplace(L.index_C(), std::move(C));

  const int e_bound = v.e_full_range ? twice : L.params().ell->floor();
  for (int i = 1; i <= sig.d(); ++i)
    for (int j = i + 1; j <= sig.d(); ++j) {
      PbwElement E = with_m(L.index_E(i, j));
      for (int s = 0; s <= e_bound; ++s) {
        const Rational c = flip * sign(L.params().ell->floor() + s) / (fact(s) * fact(twice - s));
        pp(E, s, i, twice - s, j, c);
        pp(E, s, j, twice - s, i, -c);
      }
      vc.images.emplace(L.index_E(i, j), std::move(E));
    }
  return vc;
}

ClosedFormResult closed_form_copy(const lie::LieAlgebra& L, Envelope& env, const VirtualCopy& solver) {
  const auto ps = p_indices(L);
  std::optional<ClosedFormResult> best;
  std::optional<std::pair<ClosedFormVariant, std::size_t>> printed;
  for (const auto& v : closed_form_variants()) {
    if (!v.bound_from_ell && L.params().sig && L.params().sig->q() == L.params().ell->floor()) continue;
    if (v.mu1_rederived && printed && printed->second == 0) break;
    VirtualCopy vc = closed_form_variant(L, env, v);
    std::size_t failing = 0;
    for (const auto& [x, img] : vc.images)
      for (auto y : ps)
        if (!env.commutator(img, env.generator(y)).is_zero()) ++failing;
    if (!v.mu1_rederived && (!printed || failing < printed->second)) printed = {v, failing};
    if (!best || failing < best->failing_radical_checks) best = ClosedFormResult{std::move(vc), v, failing, {}, 0, {}, false};
    if (failing == 0) break;
  }
  ClosedFormResult res = std::move(*best);
  res.best_printed = printed->first;
  res.best_printed_failing = printed->second;
  res.copy.report = verify_copy(res.copy, env);
  res.matches_solver = true;
  for (const auto& [x, img] : res.copy.images) {
    auto cmp = compare(image_name(L, x), p_part(img, L), p_part(solver.image(x), L));
    if (cmp.relation != "equal") res.matches_solver = false;
    res.diff.push_back(std::move(cmp));
  }
  return res;
}

nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json res = nlohmann::json::array();
  for (const auto& r : c.residuals) res.push_back({{"where", r.where}, {"terms", r.terms}, {"value", r.value}});
  std::size_t terms = 0;
  for (const auto& r : c.residuals) terms += r.terms;
  return {{"check", c.pass ? "pass" : "fail"}, {"evaluated", c.evaluated}, {"residual_terms", terms}, {"residuals", res}};
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"pass", r.all_pass()},
          {"radical", to_json(r.radical)},
          {"center", to_json(r.center)},
          {"brackets", to_json(r.brackets)},
          {"sl2", to_json(r.sl2)}};
}

nlohmann::json to_json(const VirtualCopy& vc) {
  const auto& L = *vc.algebra;
  nlohmann::json images = nlohmann::json::object();
  for (const auto& [x, img] : vc.images) images[image_name(L, x)] = envelope::to_json(img, L);
  nlohmann::json out{{"source", vc.source == CopySource::Solver ? "solver" : "closed_form"},
                     {"f", envelope::to_json(vc.f, L)},
                     {"images", images}};
  if (vc.report) out["verification"] = to_json(*vc.report);
  return out;
}

}  // namespace galcas::vcopy
