#include "ordering.hpp"

#include <stdexcept>

namespace lasso {

MonomialOrder::MonomialOrder(OrderStrategy strategy, std::vector<Variable> precedence,
                             bool prime_first)
    : strategy_(strategy), precedence_(std::move(precedence)), prime_first_(prime_first) {
  for (auto& v : precedence_) {
    if (v.kind != VarKind::Program || v.primed)
      throw std::invalid_argument("precedence must list unprimed program variables");
  }
  if (prime_first_) {
    for (auto& v : precedence_) ranked_.push_back(v.prime());
    for (auto& v : precedence_) ranked_.push_back(v);
  } else {
    for (auto& v : precedence_) {
      ranked_.push_back(v.prime());
      ranked_.push_back(v);
    }
  }
}

std::optional<size_t> MonomialOrder::rank(const Variable& v) const {
  for (size_t i = 0; i < ranked_.size(); ++i)
    if (ranked_[i] == v) return i;
  return std::nullopt;
}

Ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  auto is_program = [](const Variable& v) { return v.kind == VarKind::Program; };
  for (auto* m : {&a, &b})
    for (auto& [v, e] : m->exponents())
      if (is_program(v) && !rank(v))
        throw std::invalid_argument("variable lacks precedence in monomial order: " + v.str());

  // Program-variable part first.
  if (strategy_ == OrderStrategy::GradedLex) {
    int da = a.degree_where(is_program), db = b.degree_where(is_program);
    if (da != db) return da < db ? Ordering::Less : Ordering::Greater;
  }
  for (auto& v : ranked_) {
    int ea = a.exponent(v), eb = b.exponent(v);
    if (ea != eb) return ea < eb ? Ordering::Less : Ordering::Greater;
  }

  // Tie-break on the unknown part so the order stays total: lexicographic
  // over the structural variable order.
  auto ita = a.exponents().begin(), enda = a.exponents().end();
  auto itb = b.exponents().begin(), endb = b.exponents().end();
  while (ita != enda || itb != endb) {
    while (ita != enda && ita->first.kind == VarKind::Program) ++ita;
    while (itb != endb && itb->first.kind == VarKind::Program) ++itb;
    if (ita == enda && itb == endb) break;
    if (ita == enda) return Ordering::Less;
    if (itb == endb) return Ordering::Greater;
    if (ita->first != itb->first) {
      // The structurally smaller variable ranks higher; whoever holds it wins.
      return ita->first < itb->first ? Ordering::Greater : Ordering::Less;
    }
    if (ita->second != itb->second)
      return ita->second < itb->second ? Ordering::Less : Ordering::Greater;
    ++ita;
    ++itb;
  }
  return Ordering::Equal;
}

}  // namespace lasso
