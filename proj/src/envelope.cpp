#include "galcas/envelope.hpp"

#include <algorithm>
#include <sstream>

namespace galcas::envelope {

PbwElement PbwElement::scalar(const Rational& c) { return monomial({}, c); }

PbwElement PbwElement::generator(std::size_t i, const Rational& c) {
  return monomial({static_cast<std::uint16_t>(i)}, c);
}

PbwElement PbwElement::monomial(Word w, const Rational& c) {
  PbwElement e;
  e.add_term(w, c);
  return e;
}

int PbwElement::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Rational PbwElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PbwElement::add_term(const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

PbwElement& PbwElement::operator+=(const PbwElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

PbwElement& PbwElement::operator-=(const PbwElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

PbwElement& PbwElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

exact::MultiPoly PbwElement::symbol() const {
  exact::MultiPoly p;
  for (const auto& [w, c] : terms_) {
    std::vector<exact::Monomial::Factor> fs;
    for (auto g : w) fs.emplace_back(g, 1);
    p.add_term(exact::Monomial(std::move(fs)), c);
  }
  return p;
}

std::string PbwElement::to_string(const lie::LieAlgebra& L) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (a != 1 || w.empty()) os << a.get_str() << (w.empty() ? "" : "*");
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::size_t run = 1;
      while (k + run < w.size() && w[k + run] == w[k]) ++run;
      if (k > 0) os << "*";
      os << L.basis()[w[k]].name();
      if (run > 1) os << "^" << run;
      k += run - 1;
    }
  }
  return os.str();
}

Envelope::Envelope(const lie::LieAlgebra& L, unsigned degree_cap) : L_(L), cap_(degree_cap) {}

void Envelope::check_degree(int degree) const {
  if (degree > static_cast<int>(cap_))
    throw DegreeCapExceeded("enveloping-algebra degree " + std::to_string(degree) + " exceeds cap " +
                            std::to_string(cap_));
}

// u * X_x with u normal-ordered:
//   u = u' y with y > x  =>  u' y x = (u' x) y + u' [y, x]
const PbwElement& Envelope::right_multiply(const Word& u, std::uint16_t x) {
  auto key = std::make_pair(u, x);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  PbwElement result;
  if (u.empty() || u.back() <= x) {
    Word w = u;
    w.push_back(x);
    result.add_term(w, Rational(1));
  } else {
    const std::uint16_t y = u.back();
    const Word head(u.begin(), u.end() - 1);
    PbwElement head_x = right_multiply(head, x);
    result = right_multiply(head_x, y);
    for (const auto& t : L_.bracket(y, x)) {
      PbwElement part = right_multiply(head, static_cast<std::uint16_t>(t.gen));
      part *= t.coeff;
      result += part;
    }
  }
  return memo_.emplace(std::move(key), std::move(result)).first->second;
}

PbwElement Envelope::right_multiply(const PbwElement& e, std::uint16_t x) {
  PbwElement out;
  for (const auto& [w, c] : e.terms()) {
    const PbwElement& r = right_multiply(w, x);
    for (const auto& [w2, c2] : r.terms()) out.add_term(w2, c * c2);
  }
  return out;
}

PbwElement Envelope::ordered_product(std::span<const std::uint16_t> word) {
  check_degree(static_cast<int>(word.size()));
  PbwElement e = PbwElement::scalar(Rational(1));
  for (auto g : word) {
    if (g >= L_.dim()) throw std::out_of_range("generator index out of range");
    e = right_multiply(e, g);
  }
  return e;
}

PbwElement Envelope::product(const PbwElement& a, const PbwElement& b) {
  if (a.is_zero() || b.is_zero()) return {};
  check_degree(a.degree() + b.degree());
  PbwElement out;
  for (const auto& [wb, cb] : b.terms()) {
    // a * X_{wb0} * X_{wb1} ...
    PbwElement acc = a;
    for (auto g : wb) acc = right_multiply(acc, g);
    acc *= cb;
    out += acc;
  }
  return out;
}

PbwElement Envelope::commutator(const PbwElement& a, const PbwElement& b) {
  return product(a, b) - product(b, a);
}

PbwElement Envelope::symmetrize(const exact::MultiPoly& p) {
  PbwElement out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint16_t> word;
    for (const auto& [v, e] : m.factors()) {
      if (v >= L_.dim())
        throw std::invalid_argument("variable " + std::to_string(v) + " does not match a basis element");
      word.insert(word.end(), e, static_cast<std::uint16_t>(v));
    }
    check_degree(static_cast<int>(word.size()));
    // average over the distinct orderings of the multiset
    PbwElement sum;
    std::size_t count = 0;
    do {
      sum += ordered_product(word);
      ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    sum *= Rational(c / count);
    out += sum;
  }
  return out;
}

bool Envelope::is_central(const PbwElement& c) {
  for (std::size_t i = 0; i < L_.dim(); ++i)
    if (!commutator(c, generator(i)).is_zero()) return false;
  return true;
}

nlohmann::json to_json(const PbwElement& e, const lie::LieAlgebra& L) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : e.terms()) {
    nlohmann::json mono = nlohmann::json::object();
    for (auto g : w) {
      const auto name = L.basis()[g].name();
      mono[name] = mono.contains(name) ? mono[name].get<int>() + 1 : 1;
    }
    terms.push_back({{"coeff", exact::to_string(c)}, {"monomial", mono}});
  }
  return {{"pbw", true}, {"terms", terms}};
}

}  // namespace galcas::envelope
