#include "division.hpp"

#include "errors.hpp"

namespace lasso {

std::pair<Monomial, Rational> divisor_leading_term(const Poly& g, const MonomialOrder& ord) {
  if (g.is_zero()) throw Error("zero divisor");
  auto [lm, lc] = g.leading_term(ord);
  auto [program_part, unknown_part] = lm.split([](const Variable& v) { return !v.is_unknown(); });
  if (!unknown_part.is_one())
    throw ParametricLeadingCoefficient(
        "divisor has a parametric leading coefficient: " + g.str());
  // The flat leading term has a trivial unknown part exactly when the
  // coefficient of the leading program monomial is a single rational term.
  return {program_part, lc};
}

DivisionResult divide(const Poly& p, const std::vector<Poly>& divisors,
                      const MonomialOrder& ord) {
  std::vector<std::pair<Monomial, Rational>> leads;
  leads.reserve(divisors.size());
  for (auto& g : divisors) leads.push_back(divisor_leading_term(g, ord));

  DivisionResult res;
  res.quotients.assign(divisors.size(), Poly());
  Poly work = p;
  while (!work.is_zero()) {
    auto [m, c] = work.leading_term(ord);
    bool stepped = false;
    for (size_t i = 0; i < divisors.size(); ++i) {
      if (!leads[i].first.divides(m)) continue;
      Poly t(m / leads[i].first, c / leads[i].second);
      res.quotients[i] += t;
      work -= t * divisors[i];
      stepped = true;
      break;
    }
    if (!stepped) {
      Poly t(m, c);
      res.remainder += t;
      work -= t;
    }
  }
  return res;
}

}  // namespace lasso
