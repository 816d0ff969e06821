#pragma once

#include <vector>

#include "polynomial.hpp"

namespace lasso {

struct DivisionResult {
  std::vector<Poly> quotients;  // one per divisor
  Poly remainder;
};

// Multivariate division of p by the divisor list.  Afterwards
//   p == sum_i quotients[i] * divisors[i] + remainder
// and no monomial of the remainder is divisible by the leading monomial of
// any divisor.  Each divisor's leading coefficient with respect to the
// program variables must be a nonzero rational; unknowns may appear
// anywhere else (dividend coefficients, divisor tails).
DivisionResult divide(const Poly& p, const std::vector<Poly>& divisors,
                      const MonomialOrder& ord);

// The leading term of a divisor in the coefficient view: the leading
// program-variable monomial together with its rational coefficient.
// Throws ParametricLeadingCoefficient when the coefficient has unknowns.
std::pair<Monomial, Rational> divisor_leading_term(const Poly& g, const MonomialOrder& ord);

}  // namespace lasso
