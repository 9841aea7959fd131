#include "galcas/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace galcas::exact {

std::string var_name(VarId v, const VarNames* names) {
  if (names != nullptr && v < names->size()) return (*names)[v];
  return "v" + std::to_string(v);
}

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v)
      factors_.back().second += e;
    else
      factors_.emplace_back(v, e);
  }
}

Monomial Monomial::var(VarId v, std::uint32_t power) {
  Monomial m;
  if (power > 0) m.factors_.emplace_back(v, power);
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

MultiPoly MultiPoly::constant(const Rational& c) { return term(Monomial{}, c); }

MultiPoly MultiPoly::var(VarId v) { return term(Monomial::var(v), Rational(1)); }

MultiPoly MultiPoly::term(const Monomial& m, const Rational& c) {
  MultiPoly p;
  p.add_term(m, c);
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.degree() == d; });
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.degree()) == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

std::vector<VarId> MultiPoly::variables() const {
  std::set<VarId> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) vs.insert(f.first);
  return {vs.begin(), vs.end()};
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(Rational(1));
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::diff(VarId v) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    auto e = m.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Factor> fs;
    for (const auto& f : m.factors()) {
      if (f.first != v)
        fs.push_back(f);
      else if (f.second > 1)
        fs.emplace_back(v, f.second - 1);
    }
    out.add_term(Monomial(std::move(fs)), c * e);
  }
  return out;
}

namespace {

Rational power(const Rational& x, std::uint32_t e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  return r;
}

}  // namespace

Rational MultiPoly::evaluate(const Point& point, const VarNames* names) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw MissingVariable(v, var_name(v, names));
      t *= power(it->second, e);
    }
    sum += t;
  }
  return sum;
}

Rational MultiPoly::evaluate(std::span<const Rational> values) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.factors()) {
      if (v >= values.size()) throw MissingVariable(v, var_name(v, nullptr));
      t *= power(values[v], e);
    }
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(const std::map<VarId, MultiPoly>& images) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    MultiPoly t = constant(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = images.find(v);
      if (it == images.end())
        kept.emplace_back(v, e);
      else
        t *= it->second.pow(e);
    }
    if (!kept.empty()) t *= term(Monomial(std::move(kept)), Rational(1));
    out += t;
  }
  return out;
}

std::string MultiPoly::to_string(const VarNames* names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational a = abs(c);
    bool unit = (a == 1);
    if (!unit || m.is_one()) os << a.get_str();
    bool star = !unit;
    for (const auto& [v, e] : m.factors()) {
      if (star) os << "*";
      star = true;
      os << var_name(v, names);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace galcas::exact
