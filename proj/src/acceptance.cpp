#include "galcas/acceptance.hpp"

#include <chrono>
#include <sstream>

#include "galcas/envelope.hpp"
#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/poly_matrix.hpp"
#include "galcas/reduction.hpp"
#include "galcas/virtual_copy.hpp"

namespace galcas::acceptance {

namespace {

using exact::MultiPoly;
using exact::Rational;
using lie::HalfInt;
using lie::Signature;

// Pinned parameters of the suite.
constexpr std::size_t kDetSamples = 5;
constexpr int kWorkedRmax = 6;
constexpr std::size_t kMaxListedFailures = 12;

class Collector {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void deviate(const std::string& what) {
    ++total_;
    deviations_.push_back(what);
  }
  std::size_t total() const { return total_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& deviations() const { return deviations_; }
  bool ok() const { return failures_.empty(); }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> deviations_;
};

std::string tag(int twice, int p, int q) {
  return "l=" + std::to_string(twice) + "/2 (" + std::to_string(p) + "," + std::to_string(q) + ")";
}

std::vector<Signature> all_splits(int d) {
  std::vector<Signature> out;
  for (int q = 0; q <= d; ++q) out.emplace_back(d - q, q);
  return out;
}

// (p, q) and (q, p) give isomorphic algebras
std::vector<Signature> inequivalent_splits(int d) {
  std::vector<Signature> out;
  for (int q = 0; q <= d / 2; ++q) out.emplace_back(d - q, q);
  return out;
}

CriterionResult named(int id, const char* name) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  return r;
}

void finish(CriterionResult& r, const Collector& c, const std::string& summary) {
  r.pass = c.ok();
  std::ostringstream os;
  os << summary << " [" << (c.total() - c.failures().size() - c.deviations().size()) << "/" << c.total()
     << " checks exact";
  if (!c.deviations().empty()) os << ", " << c.deviations().size() << " misprint";
  os << "]";
  r.detail = os.str();
  r.failures = c.failures();
  r.deviations = c.deviations();
}

CriterionResult jacobi(const Options&) {
  auto r = named(1, "jacobi");
  Collector c;
  for (int tw : {1, 3, 5})
    for (int d = 3; d <= 6; ++d)
      for (const auto& sig : all_splits(d))
        for (bool ext : {true, false}) {
          const auto L = ext ? lie::build_extended(HalfInt(tw), sig) : lie::build_unextended(HalfInt(tw), sig);
          const auto v = lie::jacobi_check(L);
          c.check(v.empty() && L.dim() == lie::expected_dim(HalfInt(tw), sig, ext),
                  tag(tw, sig.p(), sig.q()) + (ext ? " extended" : " unextended") + ": " +
                      std::to_string(v.size()) + " violating triples");
        }
  finish(r, c, "Jacobi identity on l in {1/2,3/2,5/2}, 3<=d<=6, all splits, both extensions");
  return r;
}

CriterionResult extended_counts(const Options& opt) {
  auto r = named(2, "extended_counts");
  Collector c;
  for (int tw : {1, 3, 5})
    for (int d = 3; d <= 6; ++d)
      for (const auto& sig : all_splits(d)) {
        const auto rep = inv::bb_count(lie::build_extended(HalfInt(tw), sig), opt.trials, opt.seed);
        const std::size_t want = 2 + static_cast<std::size_t>(d / 2);
        c.check(rep.N == want && rep.rank % 2 == 0,
                tag(tw, sig.p(), sig.q()) + ": N=" + std::to_string(rep.N) + ", expected " + std::to_string(want));
      }
  finish(r, c, "N = 2 + [d/2] for the extended algebras");
  return r;
}

CriterionResult table1(const Options& opt) {
  auto r = named(3, "table1");
  Collector c;
  std::size_t cells = 0;
  for (const auto& [tw, row] : ReferenceTables::table1())
    for (int d = 3; d <= 8; ++d) {
      ++cells;
      const long printed = row[static_cast<std::size_t>(d - 3)];
      const long formula = red::closed_count(HalfInt(tw), d);
      c.check(formula == printed, tag(tw, d, 0) + " branch " + red::closed_count_branch(HalfInt(tw), d) +
                                      ": formula " + std::to_string(formula) + " vs table " + std::to_string(printed));
      for (const auto& sig : inequivalent_splits(d)) {
        const auto rep = inv::bb_count(lie::build_unextended(HalfInt(tw), sig), opt.trials, opt.seed);
        c.check(static_cast<long>(rep.N) == printed && rep.rank % 2 == 0,
                tag(tw, sig.p(), sig.q()) + ": N=" + std::to_string(rep.N) + " vs table " + std::to_string(printed));
      }
    }
  finish(r, c, std::to_string(cells) + " cells, every inequivalent split, plus the three closed-form branches");
  return r;
}

CriterionResult table2(const Options& opt) {
  auto r = named(4, "table2");
  Collector c;
  std::size_t cells = 0, closed = 0;
  for (const auto& [tw, row] : ReferenceTables::table2())
    for (int d = 3; d <= 10; ++d) {
      ++cells;
      const long printed = row[static_cast<std::size_t>(d - 3)];
      for (const auto& sig : {Signature(d, 0), Signature(d - 1, 1)}) {
        const auto S = red::build_reduced_system(HalfInt(tw), sig, opt.trials, opt.seed);
        c.check(static_cast<long>(S.rank) == printed,
                tag(tw, sig.p(), sig.q()) + ": rank " + std::to_string(S.rank) + " vs table " + std::to_string(printed));
        c.check(S.operators.size() == static_cast<std::size_t>(3 + d * (d - 1) / 2),
                tag(tw, sig.p(), sig.q()) + ": operator count");
      }
      if (d >= tw + 1) {
        ++closed;
        const long f = red::closed_rank(HalfInt(tw), d);
        c.check(f == printed, tag(tw, d, 0) + ": closed form " + std::to_string(f) + " vs table " + std::to_string(printed));
      }
    }
  finish(r, c, std::to_string(cells) + " cells at (d,0) and (d-1,1); closed form on " + std::to_string(closed) + " cells");
  return r;
}

CriterionResult copies(const Options&) {
  auto r = named(5, "virtual_copy");
  Collector c;
  for (int tw : {1, 3})
    for (int d : {3, 4})
      for (const auto& sig : {Signature(d, 0), Signature(d - 1, 1)}) {
        const auto L = lie::build_extended(HalfInt(tw), sig);
        envelope::Envelope env(L);
        const std::string t = tag(tw, sig.p(), sig.q());
        try {
          const auto vc = vcopy::solve_copy(L, env);
          const auto& rep = *vc.report;
          c.check(rep.radical.pass, t + ": (a) radical commutation");
          c.check(rep.center.pass, t + ": (b) center");
          c.check(rep.brackets.pass, t + ": (c) lifted brackets");
          c.check(rep.sl2.pass, t + ": lifted sl(2) triple");
          c.check(rep.radical.evaluated == vc.images.size() * static_cast<std::size_t>((tw + 1) * d),
                  t + ": radical check count");
        } catch (const vcopy::CopyError& e) {
          c.check(false, t + ": " + e.what());
        }
      }
  finish(r, c, "solver copies for l in {1/2,3/2}, d in {3,4}, signatures (d,0), (d-1,1)");
  return r;
}

std::vector<int> expected_orders(int d) {
  std::vector<int> out{4};
  for (int k = 1; k <= d / 2; ++k) out.push_back((d % 2 == 0 && k == d / 2) ? d : 4 * k);
  return out;
}

CriterionResult casimirs(const Options& opt) {
  auto r = named(6, "casimir");
  Collector c;
  for (int tw : {1, 3})
    for (int d : {3, 4})
      for (const auto& sig : {Signature(d, 0), Signature(d - 1, 1)}) {
        const auto L = lie::build_extended(HalfInt(tw), sig);
        envelope::Envelope env(L);
        const std::string t = tag(tw, sig.p(), sig.q());
        const auto vc = vcopy::solve_copy(L, env);
        std::vector<MultiPoly> fs{MultiPoly::var(static_cast<exact::VarId>(L.index_M())), inv::casimir_sl2(vc)};
        for (const auto& s : inv::casimir_so(vc)) fs.push_back(s.poly);
        std::vector<int> orders;
        for (std::size_t i = 1; i < fs.size(); ++i) {
          orders.push_back(fs[i].total_degree());
          c.check(fs[i].is_homogeneous(), t + ": invariant " + std::to_string(i) + " is not homogeneous");
          c.check(inv::invariance_check(fs[i], L), t + ": invariant " + std::to_string(i) + " not annihilated");
        }
        c.check(orders == expected_orders(d), t + ": orders do not match the printed list");
        const auto N = inv::bb_count(L, opt.trials, opt.seed).N;
        c.check(inv::jacobian_rank(fs, L.dim(), opt.seed) == N && fs.size() == N,
                t + ": constructed invariants are not " + std::to_string(N) + " independent functions");
      }
  finish(r, c, "sl(2) and so invariants annihilated, orders 4 | 4,..,2(d-1) | ..,d, independent with x_M");
  return r;
}

CriterionResult det_identity(const Options& opt) {
  auto r = named(7, "det_identity");
  Collector c;
  const auto L = lie::build_extended(HalfInt(1), Signature(3, 0));
  envelope::Envelope env(L);
  const auto vc = vcopy::solve_copy(L, env);
  const auto rep = inv::verify_det_identity(L, vc, kDetSamples, opt.seed);
  c.check(rep.order == 10, "matrix order " + std::to_string(rep.order));
  c.check(rep.m_exponent == 2, "x_M exponent " + std::to_string(rep.m_exponent));
  c.check(rep.consistent, "kappa inconsistent across samples");
  if (rep.consistent && rep.kappa) {
    // exact identity, not only at samples
    const MultiPoly c4 = inv::casimir_sl2(vc);
    const MultiPoly xm = MultiPoly::var(static_cast<exact::VarId>(L.index_M()));
    const MultiPoly rhs = xm.pow(2) * c4 * c4 * *rep.kappa;
    c.check(inv::det_A(L, rep.border == "plain" ? inv::Border::Plain : inv::Border::SlNegated) == rhs,
            "symbolic det A differs from kappa x_M^2 C'_4^2");
  }
  std::ostringstream os;
  os << "border " << rep.border << ", kappa " << (rep.kappa ? exact::to_string(*rep.kappa) : "?") << " over "
     << rep.samples << " samples, printed product " << exact::to_string(rep.printed_kappa)
     << (rep.matches_printed ? " (equal)" : " (differs)");
  finish(r, c, os.str());
  return r;
}

// action table as printed: entries (coefficient, u index) per column u_1..u_10.
using Entry = std::vector<std::pair<int, int>>;
const std::vector<Entry>& table3(char op) {
  static const std::vector<Entry> D{{{6, 1}}, {{4, 2}}, {{2, 3}}, {}, {{2, 5}}, {}, {{-2, 7}}, {{-2, 8}}, {{-4, 9}}, {{-6, 10}}};
  static const std::vector<Entry> H{{},
                                    {{-1, 1}},
                                    {{-2, 2}},
                                    {{-3, 3}},
                                    {{-2, 2}},
                                    {{-1, 3}, {-2, 5}},
                                    {{-1, 4}, {-3, 6}},
                                    {{-4, 6}},
                                    {{-2, 7}, {-3, 8}},
                                    {{-6, 9}}};
  static const std::vector<Entry> C{{{6, 2}},         {{2, 3}, {3, 5}}, {{1, 4}, {3, 6}}, {{3, 7}}, {{4, 6}},
                                    {{1, 2}, {2, 8}}, {{2, 9}},         {{2, 9}},         {{1, 10}}, {}};
  return op == 'D' ? D : op == 'H' ? H : C;
}

exact::RatMatrix printed_matrix(char op) {
  const auto& t = table3(op);
  exact::RatMatrix A(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& [k, u] : t[i]) A(i, static_cast<std::size_t>(u - 1)) = k;
  return A;
}

MultiPoly u_poly(std::initializer_list<std::tuple<int, int, int>> terms) {
  MultiPoly f;
  for (const auto& [c, a, b] : terms)
    f.add_term(exact::Monomial({{static_cast<exact::VarId>(a - 1), 1}, {static_cast<exact::VarId>(b - 1), 1}}),
               Rational(c));
  return f;
}

CriterionResult worked_example(const Options& opt) {
  auto r = named(8, "worked_example");
  Collector c;
  const HalfInt ell(3);
  const Signature sig(3, 0);
  const auto S = red::build_reduced_system(ell, sig, opt.trials, opt.seed);
  const auto phi = red::phi_basis(S);
  const auto act = red::sl2_action_on_phi(S, phi);
  const auto names = phi.u_names();

  // (i) Table 3
  std::size_t equal = 0;
  for (const auto& [op, A] : {std::pair{'D', &act.D}, std::pair{'H', &act.H}, std::pair{'C', &act.C}})
    for (std::size_t i = 0; i < phi.size(); ++i) {
      MultiPoly printed, computed;
      bool printed_weight_ok = true;
      const int shift = op == 'D' ? 0 : op == 'H' ? 2 : -2;
      for (const auto& [k, u] : table3(op)[i]) {
        printed.add_term(exact::Monomial::var(static_cast<exact::VarId>(u - 1)), Rational(k));
        if (act.weights[static_cast<std::size_t>(u - 1)] != act.weights[i] + shift) printed_weight_ok = false;
      }
      for (std::size_t j = 0; j < phi.size(); ++j)
        computed.add_term(exact::Monomial::var(static_cast<exact::VarId>(j)), (*A)(i, j));
      if (printed == computed) {
        ++equal;
        continue;
      }
      const std::string cell = std::string("action table ") + op + "'(u" + std::to_string(i + 1) + "): printed " +
                               printed.to_string(&names) + ", computed " + computed.to_string(&names);
      // a printed entry of the wrong ad D weight contradicts the D' row of the same table
      if (!printed_weight_ok && (printed - computed).size() <= 2)
        c.deviate(cell + "; the printed entry has the wrong D' weight");
      else
        c.check(false, cell);
    }

  // (ii) quadratic solutions
  const auto s2 = red::solve_ansatz(S, phi, act, 2);
  c.check(s2.u_polys.size() == 2 && s2.p_rank == 2, "r=2 solution space has dimension " + std::to_string(s2.u_polys.size()));
  c.check(s2.verified, "r=2 solutions fail the full reduced system");
  const MultiPoly F1 = u_poly({{3, 4, 4}, {27, 6, 6}, {-18, 3, 7}, {-27, 5, 8}, {12, 2, 9}, {-3, 1, 10}});
  const MultiPoly F2 = u_poly({{27, 6, 6}, {-5, 4, 4}, {18, 4, 6}, {12, 3, 7}, {-4, 1, 10}, {24, 2, 9}, {-36, 5, 7}, {-36, 3, 8}});
  MultiPoly f1 = F1;
  if (red::in_span(F1, s2.u_polys)) {
    c.check(true, "F1");
  } else {
    // the unique span element sharing every other printed coefficient has 18 u2 u9
    const MultiPoly fixed = F1 + u_poly({{6, 2, 9}});
    const MultiPoly h_printed = red::apply_u(printed_matrix('H'), F1);
    if (red::in_span(fixed, s2.u_polys) && !h_printed.is_zero()) {
      f1 = fixed;
      c.deviate("F1: with the printed 12 u2 u9, the printed H' row gives H'(F1) = " + h_printed.to_string(&names) +
                "; with 18 u2 u9 it lies in the solution space");
    } else {
      c.check(false, "F1 is not in the r=2 solution space");
    }
  }
  c.check(red::in_span(F2, s2.u_polys), "F2 is not in the r=2 solution space");
  c.check(inv::invariance_check(red::back_substitute(f1, phi), S.operators), "F1 in p-variables is not invariant");

  // (iii) quartics modulo products of quadratics
  const auto s4 = red::solve_ansatz(S, phi, act, 4);
  std::vector<MultiPoly> products;
  for (std::size_t i = 0; i < s2.u_polys.size(); ++i)
    for (std::size_t j = i; j < s2.u_polys.size(); ++j) products.push_back(s2.u_polys[i] * s2.u_polys[j]);
  const std::size_t quartics_u = s4.u_polys.size() - red::linear_rank(products);
  const std::size_t quartics_p = red::quartics_modulo_products(s2, s4);
  c.check(quartics_u == 4, "r=4 nullspace minus products: " + std::to_string(quartics_u));
  c.check(s4.verified, "r=4 solutions fail the full reduced system");

  // (iv) complete set
  const auto cs = red::complete_set(ell, sig, kWorkedRmax, opt.trials, opt.seed);
  c.check(cs.invariants.size() == 6 && cs.complete && cs.N == 6 && cs.N1 == 6,
          "complete_set: " + std::to_string(cs.invariants.size()) + " invariants, verdict " + cs.verdict);

  std::ostringstream os;
  os << "action table " << equal << "/" << 3 * phi.size() << " cells equal";
  os << "; r=2 dim " << s2.u_polys.size() << " (F1, F2 checked); r=4 quartics mod products " << quartics_u
     << " (u-space), " << quartics_p << " (p-space); complete_set(rmax=" << kWorkedRmax << ") "
     << cs.invariants.size() << " " << cs.verdict << ", degrees";
  for (int dg : cs.degrees) os << " " << dg;
  finish(r, c, os.str());
  return r;
}

CriterionResult stabilization(const Options& opt) {
  auto r = named(9, "stabilization");
  Collector c;
  const HalfInt ell(3);
  std::vector<long> rank(11, 0), n1(11, 0);
  for (int d = 4; d <= 10; ++d) {
    const auto S = red::build_reduced_system(ell, Signature(d, 0), opt.trials, opt.seed);
    rank[d] = static_cast<long>(S.rank);
    n1[d] = static_cast<long>(S.N1);
  }
  for (int d = 5; d <= 10; ++d)
    c.check(rank[d] - rank[d - 1] == ell.twice() + 1, "d=" + std::to_string(d) + ": increment " + std::to_string(rank[d] - rank[d - 1]));
  for (int d = 6; d <= 10; ++d)
    c.check(n1[d] == red::stable_N1(ell) && n1[d] == 7, "d=" + std::to_string(d) + ": N1=" + std::to_string(n1[d]));
  finish(r, c, "l=3/2: rank increments 4 for 5<=d<=10, N1 = 7 for d>=6");
  return r;
}

CriterionResult centrality(const Options&) {
  auto r = named(10, "sym_centrality");
  Collector c;
  const auto L = lie::build_extended(HalfInt(1), Signature(3, 0));
  envelope::Envelope env(L);
  const auto vc = vcopy::solve_copy(L, env);
  std::vector<std::pair<std::string, MultiPoly>> fs{{"C'_4", inv::casimir_sl2(vc)}};
  for (const auto& s : inv::casimir_so(vc)) fs.emplace_back("so(" + s.route + ")", s.poly);
  for (const auto& [name, f] : fs) c.check(env.is_central(env.symmetrize(f)), "Sym(" + name + ") is not central");
  finish(r, c, "Sym of every analytic Casimir at l=1/2, d=3 commutes with all 10 generators");
  return r;
}

}  // namespace

const std::vector<std::pair<int, std::vector<long>>>& ReferenceTables::table1() {
  static const std::vector<std::pair<int, std::vector<long>>> t{
      {1, {2, 3, 3, 4, 4, 5}}, {3, {6, 7, 7, 8, 8, 9}}, {5, {12, 15, 17, 18, 18, 19}}};
  return t;
}

const std::vector<std::pair<int, std::vector<long>>>& ReferenceTables::table2() {
  static const std::vector<std::pair<int, std::vector<long>>> t{{3, {6, 9, 13, 17, 21, 25, 29, 33}},
                                                                {5, {6, 9, 13, 18, 24, 30, 36, 42}},
                                                                {7, {6, 9, 13, 18, 24, 31, 39, 47}}};
  return t;
}

CriterionResult run_criterion(int id, const Options& opt) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = jacobi(opt); break;
      case 2: r = extended_counts(opt); break;
      case 3: r = table1(opt); break;
      case 4: r = table2(opt); break;
      case 5: r = copies(opt); break;
      case 6: r = casimirs(opt); break;
      case 7: r = det_identity(opt); break;
      case 8: r = worked_example(opt); break;
      case 9: r = stabilization(opt); break;
      case 10: r = centrality(opt); break;
    }
  } catch (const std::exception& e) {
    r.id = id;
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(const Options& opt, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (opt.only && *opt.only != id) continue;
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "[" << r.status() << "] " << r.id << " " << r.name << ": " << r.detail;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << " (" << r.seconds << " s)";
  for (std::size_t i = 0; i < r.failures.size() && i < kMaxListedFailures; ++i) os << "\n    - " << r.failures[i];
  if (r.failures.size() > kMaxListedFailures) os << "\n    ... " << r.failures.size() - kMaxListedFailures << " more";
  for (const auto& d : r.deviations) os << "\n    * " << d;
  return os.str();
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id},           {"name", r.name},         {"status", r.status()},       {"pass", r.pass},
          {"detail", r.detail},   {"failures", r.failures}, {"deviations", r.deviations}};
}

}  // namespace galcas::acceptance
