#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "galcas/envelope.hpp"
#include "galcas/liealg.hpp"

namespace galcas::vcopy {

using envelope::Envelope;
using envelope::PbwElement;
using exact::Rational;

enum class CopySource { ClosedForm, Solver };

struct Residual {
  std::string where;  // e.g. "[D~, P_1_2]"
  std::size_t terms;
  std::string value;  // truncated rendering
};

struct CheckResult {
  bool pass = true;
  std::size_t evaluated = 0;
  std::vector<Residual> residuals;
};

struct VerificationReport {
  CheckResult radical;   // (a) [X', P] = 0 for every radical generator P
  CheckResult center;    // (b) [X', M] = 0
  CheckResult brackets;  // (c) [X'_i, X'_j] = M * lift([X_i, X_j])
  CheckResult sl2;       // the three lifted sl(2) relations, a subset of (c)

  bool all_pass() const { return radical.pass && center.pass && brackets.pass && sl2.pass; }
};

/// Images X' = X M + (quadratic in P) + (multiple of M) of the Levi generators.
struct VirtualCopy {
  const lie::LieAlgebra* algebra = nullptr;
  PbwElement f;
  std::map<std::size_t, PbwElement> images;  // keyed by Levi basis index
  CopySource source = CopySource::Solver;
  std::optional<VerificationReport> report;

  const PbwElement& image(std::size_t levi_index) const { return images.at(levi_index); }
};

class CopyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves the commutation constraints with the radical for each Levi generator
/// (quadratic P ansatz of matching ad D weight), then fixes the M-multiples from
/// the bracket relations. Throws CopyError for algebras without a central M, when
/// a solution space is not one-dimensional, or when the bracket relations are
/// inconsistent. The result is verified and carries its report.
VirtualCopy solve_copy(const lie::LieAlgebra& L, Envelope& env);

/// Dimension of the solution space of the radical constraints for one generator
/// over the columns [X M, ansatz...]; exposed for tests.
std::size_t radical_solution_dimension(const lie::LieAlgebra& L, Envelope& env, std::size_t levi_index);

VerificationReport verify_copy(const VirtualCopy& vc, Envelope& env);

/// One reading of the closed-form copy's ambiguous notation.
struct ClosedFormVariant {
  bool bound_from_ell = true;   // summation bound q read as l - 1/2 (else the signature q)
  bool sqrt2_squared = false;   // sqrt(2) in mu^1 read as 2 (else dropped, i.e. read as 1)
  bool negate_quadratic = false;
  bool e_full_range = false;    // E sum over s = 0..2l (else 0..l-1/2)
  /// Replaces mu^1 by (2q+1-2s) / (s! (2q+1-s)!), the coefficient the solver finds.
  bool mu1_rederived = false;

  std::string describe() const;
};

struct GeneratorComparison {
  std::string generator;
  std::string relation;  // "equal", "proportional", "differs"
  std::string ratio;     // closed form / solver on the quadratic part when proportional
  std::size_t differing_terms = 0;
};

struct ClosedFormResult {
  VirtualCopy copy;               // best-scoring variant, verified
  ClosedFormVariant variant;
  std::size_t failing_radical_checks = 0;
  ClosedFormVariant best_printed;      // best variant with the printed mu^1
  std::size_t best_printed_failing = 0;
  std::vector<GeneratorComparison> diff;  // against the solver copy
  bool matches_solver = false;
};

/// Builds the closed-form copy under every reading in the variant set, keeps the
/// one with the fewest failing radical checks, verifies it and diffs it against `solver`.
/// Readings with the printed mu^1 are scored separately in `best_printed`.
ClosedFormResult closed_form_copy(const lie::LieAlgebra& L, Envelope& env, const VirtualCopy& solver);

/// The copy for a single variant, unverified.
VirtualCopy closed_form_variant(const lie::LieAlgebra& L, Envelope& env, const ClosedFormVariant& v);

std::vector<ClosedFormVariant> closed_form_variants();

/// Label used in reports: "D~", "E~_1_2", ...
std::string image_name(const lie::LieAlgebra& L, std::size_t levi_index);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const VirtualCopy& vc);

}  // namespace galcas::vcopy
