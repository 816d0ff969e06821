#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"

namespace lasso {

// A generic template polynomial: one fresh coefficient per monomial of
// total degree <= degree over the given variables, C(n+d, n) in total.
struct TemplateSpec {
  std::vector<Variable> vars;
  int degree = 0;
  std::string prefix;
  std::vector<Variable> coeff_vars;  // index-aligned with monomials
  std::vector<Monomial> monomials;

  size_t coefficient_count() const { return coeff_vars.size(); }
};

// Monomials are enumerated by grade, lowest degree first, lexicographically
// within a grade, so the constant coefficient is always <prefix>0.
struct TemplateResult {
  TemplateSpec spec;
  Poly poly;
};

TemplateResult generic_template(const std::vector<Variable>& vars, int degree,
                                const std::string& prefix);

// Applies an unknown valuation to a template polynomial; a partial
// valuation leaves the unassigned unknowns in place.
Poly instantiate(const Poly& p, const std::map<Variable, Rational>& alpha);

}  // namespace lasso
