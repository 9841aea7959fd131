#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "galcas/acceptance.hpp"
#include "galcas/envelope.hpp"
#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/reduction.hpp"
#include "galcas/serialize.hpp"
#include "galcas/virtual_copy.hpp"

namespace {

using namespace galcas;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitVerify = 3;
constexpr std::size_t kDetSamples = 5;

struct Job {
  std::string ell = "1/2";
  int p = 3;
  int q = 0;
  bool unextended = false;
  int rmax = 6;
  std::size_t trials = 3;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
  // tables
  int which = 1;
  std::string lmax;
  int dmax = 0;
  // copy / casimir / verify
  bool closed_form = false;
  bool det_identity = false;
  bool ansatz = false;
  std::optional<int> criterion;
};

struct Report {
  json data;
  std::string text;
  int code = kExitOk;
};

class ParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

lie::LieAlgebra build(const Job& job) {
  const auto ell = lie::HalfInt::parse(job.ell);
  const lie::Signature sig(job.p, job.q);
  return job.unextended ? lie::build_unextended(ell, sig) : lie::build_extended(ell, sig);
}

void require_extended(const Job& job, const char* what) {
  if (job.unextended) throw ParamError(std::string(what) + " needs the extended algebra (drop --unextended)");
}

std::string params_line(const Job& job) {
  return "l=" + job.ell + " (p,q)=(" + std::to_string(job.p) + "," + std::to_string(job.q) + ")" +
         (job.unextended ? " unextended" : " extended");
}

Report run_algebra(const Job& job) {
  const auto L = build(job);
  const auto violations = lie::jacobi_check(L);
  Report r{lie::to_json(L), "", violations.empty() ? kExitOk : kExitVerify};
  std::ostringstream os;
  os << params_line(job) << "\ndim " << L.dim() << "\nbasis";
  for (const auto& b : L.basis()) os << " " << b.name();
  os << "\njacobi " << (violations.empty() ? "ok" : std::to_string(violations.size()) + " violating triples") << "\n";
  r.text = os.str();
  return r;
}

Report run_count(const Job& job) {
  const auto rep = inv::bb_count(build(job), job.trials, job.seed);
  std::ostringstream os;
  os << params_line(job) << "\nN " << rep.N << "\nrank " << rep.rank << "\nj0 " << rep.j0 << "\ndim " << rep.dim
     << "\ntrials " << rep.trials << " (" << rep.agreeing << " at max)\nseed " << rep.seed << "\n";
  return {inv::to_json(rep), os.str(), kExitOk};
}

json closed_form_json(const vcopy::ClosedFormResult& pc) {
  json diff = json::array();
  for (const auto& g : pc.diff)
    diff.push_back({{"generator", g.generator}, {"relation", g.relation}, {"ratio", g.ratio},
                    {"differing_terms", g.differing_terms}});
  return {{"variant", pc.variant.describe()},
          {"failing_radical_checks", pc.failing_radical_checks},
          {"best_printed_variant", pc.best_printed.describe()},
          {"best_printed_failing", pc.best_printed_failing},
          {"matches_solver", pc.matches_solver},
          {"verification", vcopy::to_json(*pc.copy.report)},
          {"diff", diff}};
}

std::string check_text(const std::string& name, const vcopy::CheckResult& c) {
  return name + " " + (c.pass ? "pass" : "FAIL") + " (" + std::to_string(c.evaluated) + " evaluated, " +
         std::to_string(c.residuals.size()) + " nonzero)\n";
}

Report run_copy(const Job& job) {
  require_extended(job, "copy");
  const auto L = build(job);
  envelope::Envelope env(L);
  const auto vc = vcopy::solve_copy(L, env);
  const auto& rep = *vc.report;
  Report r{vcopy::to_json(vc), "", rep.all_pass() ? kExitOk : kExitVerify};
  std::ostringstream os;
  os << params_line(job) << "\nf = " << vc.f.to_string(L) << "\n";
  for (const auto& [x, img] : vc.images) os << vcopy::image_name(L, x) << " = " << img.to_string(L) << "\n";
  os << check_text("radical", rep.radical) << check_text("center", rep.center) << check_text("brackets", rep.brackets)
     << check_text("sl2", rep.sl2);
  if (job.closed_form) {
    const auto pc = vcopy::closed_form_copy(L, env, vc);
    r.data["closed_form"] = closed_form_json(pc);
    os << "closed form: best reading " << pc.variant.describe() << ", " << pc.failing_radical_checks
       << " failing radical checks; printed coefficient best " << pc.best_printed_failing << " failing; "
       << (pc.matches_solver ? "matches solver" : "differs from solver") << "\n";
    for (const auto& g : pc.diff)
      os << "  " << g.generator << ": " << g.relation << (g.ratio.empty() ? "" : " " + g.ratio) << "\n";
  }
  r.text = os.str();
  return r;
}

Report run_casimir(const Job& job) {
  require_extended(job, "casimir");
  const auto L = build(job);
  const auto names = L.coordinate_names();
  envelope::Envelope env(L);
  const auto vc = vcopy::solve_copy(L, env);
  if (!vc.report->all_pass()) return {vcopy::to_json(vc), "virtual copy failed verification\n", kExitVerify};

  struct Named {
    std::string name;
    std::string route;
    exact::MultiPoly poly;
  };
  std::vector<Named> fs{{"M", "center", exact::MultiPoly::var(static_cast<exact::VarId>(L.index_M()))},
                        {"C4", "sl2", inv::casimir_sl2(vc)}};
  for (const auto& s : inv::casimir_so(vc)) fs.push_back({"so_" + std::to_string(fs.size() - 1), s.route, s.poly});

  const auto count = inv::bb_count(L, job.trials, job.seed);
  std::vector<exact::MultiPoly> polys;
  json list = json::array();
  std::ostringstream os;
  os << params_line(job) << "\nN " << count.N << "\n";
  bool all_checked = true;
  for (const auto& f : fs) {
    const bool checked = inv::invariance_check(f.poly, L);
    all_checked = all_checked && checked;
    polys.push_back(f.poly);
    json entry{{"name", f.name}, {"route", f.route}, {"order", f.poly.total_degree()}, {"terms", f.poly.size()},
               {"poly", exact::poly_to_json(f.poly, names)}};
    if (checked) entry["checked"] = true;
    list.push_back(entry);
    os << f.name << " order " << f.poly.total_degree() << ", " << f.poly.size() << " terms, "
       << (checked ? "invariant" : "NOT INVARIANT") << "\n";
  }
  const std::size_t jrank = inv::jacobian_rank(polys, L.dim(), job.seed);
  os << "jacobian rank " << jrank << "\n";
  json data{{"N", count.N}, {"invariants", list}, {"jacobian_rank", jrank}, {"seed", job.seed}};
  bool ok = all_checked;
  if (job.det_identity) {
    const auto ir = inv::verify_det_identity(L, vc, kDetSamples, job.seed);
    data["det_identity"] = inv::to_json(ir);
    os << "det A: border " << ir.border << ", kappa " << (ir.kappa ? exact::to_string(*ir.kappa) : "?")
       << (ir.consistent ? " consistent" : " INCONSISTENT") << ", printed " << exact::to_string(ir.printed_kappa)
       << "\n";
    ok = ok && ir.consistent;
  }
  return {data, os.str(), ok ? kExitOk : kExitVerify};
}

Report run_reduce(const Job& job) {
  const auto ell = lie::HalfInt::parse(job.ell);
  const lie::Signature sig(job.p, job.q);
  if (job.rmax < 2) throw ParamError("--rmax must be at least 2");
  const auto S = red::build_reduced_system(ell, sig, job.trials, job.seed);
  const auto cs = red::complete_set(ell, sig, job.rmax, job.trials, job.seed);
  const auto names = S.algebra.coordinate_names();
  json data = red::to_json(S);
  json list = json::array();
  std::ostringstream os;
  os << "l=" << job.ell << " (p,q)=(" << job.p << "," << job.q << ") reduced system\nrank " << S.rank << "\nN1 "
     << S.N1 << "\nN " << cs.N << "\n";
  for (std::size_t i = 0; i < cs.invariants.size(); ++i) {
    json entry{{"degree", cs.degrees[i]}, {"poly", exact::poly_to_json(cs.invariants[i], names)}};
    if (cs.all_verified) entry["checked"] = true;
    list.push_back(entry);
    os << "invariant " << i + 1 << ": degree " << cs.degrees[i] << ", " << cs.invariants[i].size() << " terms\n";
  }
  if (job.ansatz) {
    const auto phi = red::phi_basis(S);
    const auto act = red::sl2_action_on_phi(S, phi);
    const auto unames = phi.u_names();
    json dict = json::object();
    for (std::size_t i = 0; i < phi.size(); ++i) dict[unames[i]] = exact::poly_to_json(phi.elements[i], names);
    json spaces = json::array();
    for (int r = 2; r <= job.rmax; ++r) {
      const auto sol = red::solve_ansatz(S, phi, act, r);
      json polys = json::array();
      for (const auto& f : sol.u_polys) polys.push_back(exact::poly_to_json(f, unames));
      spaces.push_back({{"degree", r}, {"dimension", sol.u_polys.size()}, {"p_rank", sol.p_rank},
                        {"verified", sol.verified}, {"u_polys", polys}});
      os << "ansatz r=" << r << ": " << sol.u_polys.size() << " solutions, p-rank " << sol.p_rank << "\n";
    }
    data["phi"] = dict;
    data["ansatz"] = spaces;
  }
  data["rmax"] = job.rmax;
  data["invariants"] = list;
  data["complete"] = cs.complete;
  data["verdict"] = cs.verdict;
  data["N"] = cs.N;
  os << "verdict " << cs.verdict << "\n";
  return {data, os.str(), cs.all_verified ? kExitOk : kExitVerify};
}

std::optional<long> printed_cell(const std::vector<std::pair<int, std::vector<long>>>& table, int tw, int d) {
  for (const auto& [t, row] : table)
    if (t == tw && d >= 3 && static_cast<std::size_t>(d - 3) < row.size()) return row[static_cast<std::size_t>(d - 3)];
  return std::nullopt;
}

Report run_table12(const Job& job) {
  const bool t1 = job.which == 1;
  const auto lmax = lie::HalfInt::parse(job.lmax.empty() ? (t1 ? "5/2" : "7/2") : job.lmax);
  const int dmax = job.dmax ? job.dmax : (t1 ? 8 : 10);
  if (dmax < 3) throw ParamError("--dmax must be at least 3");
  const auto& printed = t1 ? acceptance::ReferenceTables::table1() : acceptance::ReferenceTables::table2();
  json rows = json::array();
  std::ostringstream os;
  os << (t1 ? "number of invariants, unextended, (d,0)\n" : "rank of the reduced system, (d,0)\n") << "l\\d";
  for (int d = 3; d <= dmax; ++d) os << "\t" << d;
  os << "\n";
  bool all_match = true;
  for (int tw = t1 ? 1 : 3; tw <= lmax.twice(); tw += 2) {
    const lie::HalfInt ell(tw);
    os << ell.str();
    for (int d = 3; d <= dmax; ++d) {
      const lie::Signature sig(d, 0);
      json cell{{"l", ell.str()}, {"d", d}};
      long value;
      std::optional<long> formula;
      if (t1) {
        const auto rep = inv::bb_count(lie::build_unextended(ell, sig), job.trials, job.seed);
        value = static_cast<long>(rep.N);
        formula = red::closed_count(ell, d);
        cell["N"] = value;
        cell["branch"] = red::closed_count_branch(ell, d);
      } else {
        value = static_cast<long>(red::build_reduced_system(ell, sig, job.trials, job.seed).rank);
        cell["rank"] = value;
        if (d >= tw + 1) formula = red::closed_rank(ell, d);
      }
      if (formula) {
        cell["formula"] = *formula;
        cell["formula_match"] = *formula == value;
        all_match = all_match && *formula == value;
      }
      const auto p = printed_cell(printed, tw, d);
      if (p) {
        cell["printed"] = *p;
        cell["printed_match"] = *p == value;
        all_match = all_match && *p == value;
      }
      rows.push_back(cell);
      os << "\t" << value << ((p && *p != value) || (formula && *formula != value) ? "!" : "");
    }
    os << "\n";
  }
  os << (all_match ? "all cells match" : "mismatches marked with !") << "\n";
  return {json{{"table", job.which}, {"seed", job.seed}, {"trials", job.trials}, {"cells", rows}}, os.str(),
          all_match ? kExitOk : kExitVerify};
}

Report run_table3(const Job& job) {
  const auto ell = lie::HalfInt::parse(job.lmax.empty() ? "3/2" : job.lmax);
  const int d = job.dmax ? job.dmax : 3;
  const auto S = red::build_reduced_system(ell, lie::Signature(d, 0), job.trials, job.seed);
  const auto phi = red::phi_basis(S);
  const auto act = red::sl2_action_on_phi(S, phi);
  const auto unames = phi.u_names();
  const auto pnames = S.algebra.coordinate_names();
  json cols = json::array();
  std::ostringstream os;
  os << "u\tD'\tH'\tC'\n";
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const auto image = [&](const exact::RatMatrix& A) {
      exact::MultiPoly f;
      for (std::size_t j = 0; j < phi.size(); ++j)
        f.add_term(exact::Monomial::var(static_cast<exact::VarId>(j)), A(i, j));
      return f;
    };
    const auto D = image(act.D), H = image(act.H), C = image(act.C);
    cols.push_back({{"u", unames[i]},
                    {"n", phi.labels[i].first},
                    {"s", phi.labels[i].second},
                    {"phi", exact::poly_to_json(phi.elements[i], pnames)},
                    {"D", exact::poly_to_json(D, unames)},
                    {"H", exact::poly_to_json(H, unames)},
                    {"C", exact::poly_to_json(C, unames)}});
    os << unames[i] << "\t" << D.to_string(&unames) << "\t" << H.to_string(&unames) << "\t" << C.to_string(&unames)
       << "\n";
  }
  return {json{{"table", 3}, {"l", ell.str()}, {"d", d}, {"columns", cols}}, os.str(), kExitOk};
}

Report run_tables(const Job& job) {
  if (job.which == 3) return run_table3(job);
  if (job.which != 1 && job.which != 2) throw ParamError("--which must be 1, 2 or 3");
  return run_table12(job);
}

Report run_verify(const Job& job, bool stream_text) {
  acceptance::Options opt;
  opt.seed = job.seed;
  opt.trials = job.trials;
  opt.only = job.criterion;
  if (opt.only && (*opt.only < 1 || *opt.only > acceptance::kCriteria))
    throw ParamError("--criterion must be in 1.." + std::to_string(acceptance::kCriteria));
  std::ostringstream os;
  const auto results = acceptance::run_all(opt, [&](const acceptance::CriterionResult& r) {
    const auto line = acceptance::format_line(r) + "\n";
    if (stream_text) std::cout << line << std::flush;
    os << line;
  });
  json list = json::array();
  bool ok = true;
  int deviations = 0;
  for (const auto& r : results) {
    list.push_back(acceptance::to_json(r));
    ok = ok && r.pass;
    deviations += !r.deviations.empty();
  }
  std::string summary = ok ? "all criteria pass" : "FAILURES";
  if (deviations) summary += " (" + std::to_string(deviations) + " with misprints in the printed data)";
  os << summary << "\n";
  if (stream_text) std::cout << summary << "\n";
  return {json{{"seed", job.seed}, {"trials", job.trials}, {"criteria", list}, {"pass", ok}}, os.str(),
          ok ? kExitOk : kExitVerify};
}

void add_common(CLI::App* sub, Job& job, bool algebra_params) {
  if (algebra_params) {
    sub->add_option("--l", job.ell, "l as a/2 with a odd")->required();
    sub->add_option("--p", job.p, "positive part of the signature")->required();
    sub->add_option("--q", job.q, "negative part of the signature (default 0)");
    sub->add_flag("--unextended", job.unextended, "quotient by the center");
  }
  sub->add_option("--trials", job.trials, "random specializations for generic ranks")->check(CLI::PositiveNumber);
  sub->add_option("--seed", job.seed, "seed for all randomized steps");
  sub->add_option("--format", job.format, "output format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", job.out, "write the report to this file instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir operators of conformal Galilei algebras"};
  app.require_subcommand(1);
  Job job;

  auto* algebra = app.add_subcommand("algebra", "structure constants and Jacobi check");
  add_common(algebra, job, true);
  auto* count = app.add_subcommand("count", "number of invariants from the generic rank");
  add_common(count, job, true);
  auto* copy = app.add_subcommand("copy", "virtual copy of the Levi factor");
  add_common(copy, job, true);
  copy->add_flag("--closed-form", job.closed_form, "also evaluate the closed-form copy and compare");
  auto* casimir = app.add_subcommand("casimir", "Casimir invariants from the virtual copy");
  add_common(casimir, job, true);
  casimir->add_flag("--det-identity", job.det_identity, "check the determinant identity of the bordered matrix");
  auto* reduce = app.add_subcommand("reduce", "invariants of the unextended algebra by reduction");
  add_common(reduce, job, true);
  reduce->add_option("--rmax", job.rmax, "maximal ansatz degree in the u-variables (default 6)");
  reduce->add_flag("--ansatz", job.ansatz, "include every ansatz solution space and the u dictionary");
  auto* tables = app.add_subcommand("tables", "reproduce the count, rank and action tables");
  add_common(tables, job, false);
  tables->add_option("--which", job.which, "1: counts, 2: ranks, 3: sl(2) action on the quadratic invariants");
  tables->add_option("--lmax", job.lmax, "largest l (table 3: the l used)");
  tables->add_option("--dmax", job.dmax, "largest d (table 3: the d used)");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify, job, false);
  verify->add_option("--criterion", job.criterion, "run a single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  }

  const bool text = job.format == "text";
  Report report;
  try {
    if (algebra->parsed()) report = run_algebra(job);
    else if (count->parsed()) report = run_count(job);
    else if (copy->parsed()) report = run_copy(job);
    else if (casimir->parsed()) report = run_casimir(job);
    else if (reduce->parsed()) report = run_reduce(job);
    else if (tables->parsed()) report = run_tables(job);
    else report = run_verify(job, text && job.out.empty());
  } catch (const lie::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const vcopy::CopyError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string body = text ? report.text : report.data.dump(2) + "\n";
  if (!job.out.empty()) {
    std::ofstream f(job.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << job.out << "\n";
      return kExitParam;
    }
    f << body;
  } else if (!(text && verify->parsed())) {
    std::cout << body;
  }
  return report.code;
}
