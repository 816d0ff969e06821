#pragma once

#include <optional>
#include <vector>

#include "monomial.hpp"

namespace lasso {

enum class OrderStrategy { Lex, GradedLex };

enum class Ordering { Less, Equal, Greater };

// A monomial ordering over the program variables, extended to mixed
// monomials by ranking every unknown below every program variable.  This
// makes leading terms agree with the coefficient view: a polynomial whose
// monomials mix program variables and unknowns behaves like a polynomial
// in the program variables with coefficients over the unknowns.
//
// With the prime-first flag (the default) every primed variable outranks
// every unprimed one, so division eliminates primed variables first.
class MonomialOrder {
 public:
  MonomialOrder(OrderStrategy strategy, std::vector<Variable> precedence,
                bool prime_first = true);

  // Strict total order; throws if a program variable lacks precedence.
  Ordering compare(const Monomial& a, const Monomial& b) const;

  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) == Ordering::Less;
  }
  bool greater(const Monomial& a, const Monomial& b) const {
    return compare(a, b) == Ordering::Greater;
  }

  OrderStrategy strategy() const { return strategy_; }
  bool prime_first() const { return prime_first_; }
  const std::vector<Variable>& precedence() const { return precedence_; }

  bool is_prime_first_lex() const {
    return strategy_ == OrderStrategy::Lex && prime_first_;
  }

 private:
  // Position in the ranked program-variable list; nullopt for unknowns.
  std::optional<size_t> rank(const Variable& v) const;

  OrderStrategy strategy_;
  std::vector<Variable> precedence_;  // unprimed program variables, highest first
  bool prime_first_;
  std::vector<Variable> ranked_;  // primed + unprimed, highest first
};

}  // namespace lasso
