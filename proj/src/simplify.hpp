#pragma once

#include "conditions.hpp"

namespace lasso {

// A variable eliminated by Gaussian elimination, with the expression (over
// the surviving unknowns) that reconstructs it from a model.
struct Binding {
  Variable var;
  Poly expr;
};

struct SimplifyResult {
  ConstraintSystem system;        // over the surviving unknowns
  std::vector<Binding> bindings;  // all expressed over surviving unknowns
  bool unsat = false;             // a ground contradiction was derived
};

// Eliminates unknowns through equalities that are linear in the unknowns,
// substituting everywhere.  Ground equalities and trivially-true
// disequality groups are dropped; a ground contradiction marks the system
// unsat.  The transformation preserves satisfiability, and a model of the
// simplified system extends to the original one via the bindings.
SimplifyResult simplify_linear(const ConstraintSystem& cs);

// Evaluates the bindings to recover eliminated unknowns.
std::map<Variable, Rational> extend_model(const std::map<Variable, Rational>& reduced,
                                          const std::vector<Binding>& bindings);

}  // namespace lasso
