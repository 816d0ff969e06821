#include "groebner.hpp"

#include <algorithm>
#include <deque>

#include "errors.hpp"
#include "program.hpp"

namespace lasso {

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  if (f.is_zero() || g.is_zero()) throw Error("s_polynomial of zero polynomial");
  auto [mf, cf] = divisor_leading_term(f, ord);
  auto [mg, cg] = divisor_leading_term(g, ord);
  Monomial l = Monomial::lcm(mf, mg);
  return f * Poly(l / mf, Rational(1) / cf) - g * Poly(l / mg, Rational(1) / cg);
}

namespace {

Poly make_monic(const Poly& p, const MonomialOrder& ord) {
  return p / divisor_leading_term(p, ord).second;
}

// Detects parametric leading coefficients before a polynomial joins the
// basis; callers translate this into a ParametricInput diagnosis.
std::pair<Monomial, Rational> checked_lead(const Poly& p, const MonomialOrder& ord) {
  try {
    return divisor_leading_term(p, ord);
  } catch (const ParametricLeadingCoefficient&) {
    throw ParametricInput(
        "generator set is parametric beyond the triangular solved form: " + p.str());
  }
}

}  // namespace

GroebnerBasis buchberger(const std::vector<Poly>& generators, const MonomialOrder& ord) {
  std::vector<Poly> basis;
  std::vector<Monomial> leads;
  auto push = [&](const Poly& p) {
    auto [lm, lc] = checked_lead(p, ord);
    basis.push_back(p / lc);
    leads.push_back(lm);
  };

  for (auto& g : generators) {
    if (g.is_zero()) continue;
    Poly m = g / checked_lead(g, ord).second;
    if (std::find(basis.begin(), basis.end(), m) == basis.end()) push(g);
  }

  std::deque<std::pair<size_t, size_t>> queue;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) queue.emplace_back(i, j);

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    // Buchberger's first criterion: coprime leading monomials give an
    // S-polynomial that always reduces to zero.
    if (Monomial::lcm(leads[i], leads[j]) == leads[i] * leads[j]) continue;
    Poly s = s_polynomial(basis[i], basis[j], ord);
    Poly r = divide(s, basis, ord).remainder;
    if (r.is_zero()) continue;
    push(r);
    for (size_t k = 0; k + 1 < basis.size(); ++k) queue.emplace_back(k, basis.size() - 1);
  }

  // Minimalize: drop generators whose leading monomial another one divides.
  std::vector<size_t> keep;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (leads[j].divides(leads[i]) && !(leads[i] == leads[j] && j > i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }

  // Tail-reduce each survivor against the others.
  std::vector<Poly> reduced;
  for (size_t idx = 0; idx < keep.size(); ++idx) {
    std::vector<Poly> others;
    for (size_t j = 0; j < keep.size(); ++j)
      if (j != idx) others.push_back(basis[keep[j]]);
    Poly r = others.empty() ? basis[keep[idx]] : divide(basis[keep[idx]], others, ord).remainder;
    reduced.push_back(make_monic(r, ord));
  }

  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return ord.less(a.leading_term(ord).first, b.leading_term(ord).first);
  });
  return GroebnerBasis{std::move(reduced), ord, true};
}

Poly normal_form(const Poly& p, const GroebnerBasis& G) {
  return divide(p, G.generators, G.ord).remainder;
}

bool ideal_member(const Poly& p, const std::vector<Poly>& generators,
                  const MonomialOrder& ord) {
  return normal_form(p, buchberger(generators, ord)).is_zero();
}

GroebnerBasis transition_basis(const Transition& t, const MonomialOrder& ord) {
  if (!ord.is_prime_first_lex())
    throw Error("transition bases require a prime-first lexicographic order");
  if (t.det && t.det->guards.size() <= 1) {
    bool unit_denominators = true;
    for (auto& u : t.det->updates)
      if (u.denominator != Poly(1)) unit_denominators = false;
    if (unit_denominators) {
      // Lemma: for a deterministic transition with unit denominators and at
      // most one guard, {h} + {x' - f} is already a Groebner basis.
      std::vector<Poly> gens;
      for (auto& h : t.det->guards) gens.push_back(make_monic(h, ord));
      for (auto& u : t.det->updates)
        gens.push_back(Poly(u.target.prime()) - u.numerator);
      return GroebnerBasis{std::move(gens), ord, false};
    }
  }
  return buchberger(t.assertion.generators, ord);
}

}  // namespace lasso
