#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ordering.hpp"
#include "rational.hpp"

namespace lasso {

// Multivariate polynomial with exact rational coefficients.  Monomials may
// mix program variables and unknowns (template/synthesis variables); the
// term map never stores zero coefficients, so structural equality is
// semantic equality.  Values are immutable after construction: every
// operation returns a fresh polynomial.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c) {
    if (c != 0) terms_[Monomial::one()] = c;
  }
  Poly(int c) : Poly(Rational(c)) {}
  Poly(const Variable& v) { terms_[Monomial(v)] = 1; }
  Poly(const Monomial& m, const Rational& c) {
    if (c != 0) terms_[m] = c;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  Rational constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.begin()->second;
  }

  size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly operator/(const Rational& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  Poly pow(int k) const;

  // Simultaneous substitution; variables without a binding stay in place.
  Poly substitute(const std::map<Variable, Poly>& bindings) const;

  // Renames every unprimed program variable to its primed twin.
  Poly primed() const;

  // Rewrites the polynomial as a polynomial in the selected variables with
  // coefficients over the remaining ones.  Summing key*value over the result
  // reproduces the input exactly.
  std::map<Monomial, Poly> coefficients_in(
      const std::function<bool(const Variable&)>& pred) const;
  std::map<Monomial, Poly> coefficients_in(const std::vector<Variable>& vars) const;

  // Total degree; nullopt for the zero polynomial.
  std::optional<int> degree() const;
  // Total degree counting only the variables selected by pred.
  std::optional<int> degree_where(const std::function<bool(const Variable&)>& pred) const;

  bool has_var(const std::function<bool(const Variable&)>& pred) const;
  std::set<Variable> variables() const;

  // Leading term under the given order; throws on the zero polynomial.
  std::pair<Monomial, Rational> leading_term(const MonomialOrder& ord) const;

  std::string str() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend Poly operator*(const Rational& c, const Poly& p) { return p * c; }

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

}  // namespace lasso
