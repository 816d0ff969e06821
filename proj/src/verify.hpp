#pragma once

#include <optional>
#include <string>
#include <vector>

#include "program.hpp"
#include "templates.hpp"

namespace lasso {

// Independent certification by exact ideal reasoning.  Nothing here
// consults a solver: a rational candidate passes or fails by algebra alone.

struct ConsecutionCheck {
  std::string transition;
  bool ok = false;
  Poly witness;  // Phi with  |_ q^deg(p) s p(V') _|(tau) = witness * p
  std::string note;
};

struct InvariantReport {
  bool stem_ok = false;
  std::vector<ConsecutionCheck> consecutions;
  bool ok() const {
    if (!stem_ok) return false;
    for (auto& c : consecutions)
      if (!c.ok) return false;
    return true;
  }
};

// Certifies p as an inductive invariant of the parameter-free lasso via the
// sufficient condition: p reduces to zero modulo the stem, and the divided
// next-state image is an exact polynomial multiple of p.  A failed
// consecution means "not certifiable by this method", not "not an
// invariant"; the report's note says which.
InvariantReport check_invariant(const LassoProgram& L, const Poly& p);

// post follows from p = 0 and the exit condition: every post generator is
// a member of the ideal generated by p and the exit generators.
bool check_post(const Poly& p, const AlgebraicAssertion& exit, const AlgebraicAssertion& post,
                const MonomialOrder& ord);

struct TestCaseCheck {
  size_t index = 0;
  bool adhered = false;
  std::string detail;
};

struct SolutionReport {
  InvariantReport invariant;
  std::optional<bool> post_ok;  // absent when the problem has no post
  std::vector<TestCaseCheck> testcases;
  Poly instantiated_psi;
  std::string failure;  // first reason certification failed, if any

  bool certified() const {
    if (!invariant.ok()) return false;
    if (post_ok && !*post_ok) return false;
    for (auto& t : testcases)
      if (!t.adhered) return false;
    return true;
  }
};

// Instantiates the synthesized program L_alpha and the invariant candidate,
// then runs the invariant check, the post entailment and every declared
// test case through concrete execution.  The assignment must cover the
// synthesis parameters and the template coefficients with rationals.
SolutionReport check_solution(const SynthesisProblem& S,
                              const std::map<Variable, Rational>& assignment,
                              const Poly& psi);

// Substitutes the parameters into a lasso program, re-deriving the
// deterministic views.
LassoProgram instantiate_lasso(const LassoProgram& L,
                               const std::map<Variable, Rational>& alpha,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace lasso
