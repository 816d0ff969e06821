#include "polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lasso {

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r;
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (auto& [m1, c1] : terms_)
    for (auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

Poly Poly::operator/(const Rational& c) const {
  if (c == 0) throw std::invalid_argument("division by zero rational");
  return *this * (Rational(1) / c);
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  Poly r(Rational(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

Poly Poly::substitute(const std::map<Variable, Poly>& bindings) const {
  Poly result;
  for (auto& [m, c] : terms_) {
    Poly term{Rational(c)};
    Monomial untouched;
    for (auto& [v, e] : m.exponents()) {
      auto it = bindings.find(v);
      if (it == bindings.end())
        untouched = untouched * Monomial(v, e);
      else
        term = term * it->second.pow(e);
    }
    result += term * Poly(untouched, 1);
  }
  return result;
}

Poly Poly::primed() const {
  std::map<Variable, Poly> bindings;
  for (auto& v : variables())
    if (v.kind == VarKind::Program && !v.primed) bindings.emplace(v, Poly(v.prime()));
  return substitute(bindings);
}

std::map<Monomial, Poly> Poly::coefficients_in(
    const std::function<bool(const Variable&)>& pred) const {
  std::map<Monomial, Poly> result;
  for (auto& [m, c] : terms_) {
    auto [in, out] = m.split(pred);
    result[in] += Poly(out, c);
  }
  // Drop slots that cancelled to zero.
  for (auto it = result.begin(); it != result.end();)
    it = it->second.is_zero() ? result.erase(it) : std::next(it);
  return result;
}

std::map<Monomial, Poly> Poly::coefficients_in(const std::vector<Variable>& vars) const {
  return coefficients_in([&](const Variable& v) {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
  });
}

std::optional<int> Poly::degree() const {
  return degree_where([](const Variable&) { return true; });
}

std::optional<int> Poly::degree_where(const std::function<bool(const Variable&)>& pred) const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.degree_where(pred));
  return d;
}

bool Poly::has_var(const std::function<bool(const Variable&)>& pred) const {
  for (auto& [m, c] : terms_)
    if (m.has_var(pred)) return true;
  return false;
}

std::set<Variable> Poly::variables() const {
  std::set<Variable> vs;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m.exponents()) vs.insert(v);
  return vs;
}

std::pair<Monomial, Rational> Poly::leading_term(const MonomialOrder& ord) const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (ord.greater(it->first, best->first)) best = it;
  return {best->first, best->second};
}

std::string Monomial::str() const {
  if (is_one()) return "1";
  std::ostringstream out;
  bool first = true;
  for (auto& [v, e] : exponents()) {
    if (!first) out << "*";
    first = false;
    out << v.str();
    if (e > 1) out << "^" << e;
  }
  return out.str();
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  // Graded order, high degree first, for readable output.
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da > db;
    return a.first < b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (auto& [m, c] : sorted) {
    Rational abs = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one())
      out << rational_to_string(abs);
    else if (abs == 1)
      out << m.str();
    else
      out << rational_to_string(abs) << "*" << m.str();
  }
  return out.str();
}

}  // namespace lasso
