#pragma once

#include <vector>

#include "division.hpp"

namespace lasso {

struct Transition;

struct GroebnerBasis {
  std::vector<Poly> generators;
  MonomialOrder ord;
  bool reduced = false;
};

// Standard S-polynomial: the leading terms of f and g cancel in the result.
// Inputs must be nonzero with rational leading coefficients.
Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord);

// Buchberger's algorithm with the lcm-coprimality pruning criterion.
// Returns the reduced Groebner basis (monic, inter-reduced, sorted by
// ascending leading monomial).  Inputs may carry unknowns in coefficients
// and tails as long as every leading coefficient stays rational; if an
// S-polynomial remainder acquires a parametric leading coefficient the
// input is outside the supported solved form and an error is raised.
GroebnerBasis buchberger(const std::vector<Poly>& generators, const MonomialOrder& ord);

// Unique remainder of p modulo G.
Poly normal_form(const Poly& p, const GroebnerBasis& G);

bool ideal_member(const Poly& p, const std::vector<Poly>& generators,
                  const MonomialOrder& ord);

// Basis of a transition's ideal.  Deterministic transitions with unit
// denominators and at most one guard are returned directly (the generator
// set is already a Groebner basis under a prime-first ordering); anything
// else goes through buchberger.
GroebnerBasis transition_basis(const Transition& t, const MonomialOrder& ord);

}  // namespace lasso
