#pragma once

#include <string>

#include "program.hpp"

namespace lasso {

// Parses the line-oriented problem format:
//
//   problem <name>
//   vars    <v1> <v2> ...            # precedence = declaration order
//   params  <c1> <c2> ...            # optional synthesis parameters
//   stem:   <poly> = <poly> [, ...]
//   transition <name>: <v>' = <expr> [, ...] [, guard <p> = <p>] [, rel <p> = <p>]
//   exit:   <poly> = <poly> [, ...]  # optional; omitted = True
//   post:   <poly> = <poly> [, ...]  # optional
//   testcase: init {v:val, ...} final {v:val, ...} path <t1> <t2> ...
//
// Expressions use + - * / ^ over variables, parameters and rational
// literals.  An update right-hand side may be a quotient with a polynomial
// denominator (y / (1 - y)); elsewhere denominators must cancel to
// constants.  Inside a transition, every right-hand side reads the
// pre-state; old(v) is accepted as an explicit way to say so.  Variables a
// transition does not mention are updated to themselves.
SynthesisProblem parse_problem(const std::string& text);

// Polynomial over the problem's variables and parameters (unprimed).
Poly parse_poly(const std::string& text, const SynthesisProblem& problem);

// Valuation literal of the form {v:val, ...}.
Valuation parse_valuation(const std::string& text, const SynthesisProblem& problem);

// Renders a problem back to the input format; parsing the result yields a
// structurally equal problem.
std::string render_problem(const SynthesisProblem& problem);

bool structurally_equal(const SynthesisProblem& a, const SynthesisProblem& b);

}  // namespace lasso
