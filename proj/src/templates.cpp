#include "templates.hpp"

#include <stdexcept>

namespace lasso {

namespace {

// All monomials of exact degree d over vars[from..], most significant
// variable first within the grade.
void enumerate_grade(const std::vector<Variable>& vars, size_t from, int d,
                     const Monomial& acc, std::vector<Monomial>& out) {
  if (d == 0) {
    out.push_back(acc);
    return;
  }
  if (from == vars.size()) return;
  if (from + 1 == vars.size()) {
    out.push_back(acc * Monomial(vars[from], d));
    return;
  }
  for (int e = d; e >= 0; --e)
    enumerate_grade(vars, from + 1, d - e, e ? acc * Monomial(vars[from], e) : acc, out);
}

}  // namespace

TemplateResult generic_template(const std::vector<Variable>& vars, int degree,
                                const std::string& prefix) {
  if (degree < 0) throw std::invalid_argument("template degree must be nonnegative");
  TemplateResult res;
  res.spec.vars = vars;
  res.spec.degree = degree;
  res.spec.prefix = prefix;
  for (int d = 0; d <= degree; ++d)
    enumerate_grade(vars, 0, d, Monomial::one(), res.spec.monomials);
  for (size_t i = 0; i < res.spec.monomials.size(); ++i) {
    Variable a = template_var(prefix + std::to_string(i));
    res.spec.coeff_vars.push_back(a);
    res.poly += Poly(res.spec.monomials[i] * Monomial(a), 1);
  }
  return res;
}

Poly instantiate(const Poly& p, const std::map<Variable, Rational>& alpha) {
  std::map<Variable, Poly> bindings;
  for (auto& [v, q] : alpha) bindings.emplace(v, Poly(q));
  return p.substitute(bindings);
}

}  // namespace lasso
