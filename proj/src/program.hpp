#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace lasso {

// Conjunction of polynomial equalities p_i = 0, identified with its
// generator set.  The empty list is the assertion True.
struct AlgebraicAssertion {
  std::vector<Poly> generators;

  bool is_true() const { return generators.empty(); }
  bool parameter_free() const {
    for (auto& g : generators)
      if (g.has_var([](const Variable& v) { return v.is_unknown(); })) return false;
    return true;
  }
};

// One update x' * g(V) - f(V) = 0 of a deterministic transition, with the
// denominator normalized: constant denominators are folded into the
// numerator, so g is either 1 or a non-constant polynomial.
struct Update {
  Variable target;  // unprimed base variable
  Poly numerator;
  Poly denominator;
};

struct DeterministicView {
  std::vector<Poly> guards;     // over unprimed variables
  std::vector<Update> updates;  // one per program variable
};

struct Transition {
  std::string name;
  AlgebraicAssertion assertion;          // over V and V'
  std::optional<DeterministicView> det;  // present iff the shape matches
};

struct LassoProgram {
  std::vector<Variable> vars;  // declaration order fixes the precedence
  AlgebraicAssertion stem;     // over V
  std::vector<Transition> transitions;
  AlgebraicAssertion exit;  // over V; empty = True

  MonomialOrder default_order() const {
    return MonomialOrder(OrderStrategy::Lex, vars, /*prime_first=*/true);
  }
  const Transition* find_transition(const std::string& name) const;
  // The exit generator s(V) when the exit condition has exactly one
  // generator, the constant 1 otherwise.
  Poly exit_factor() const {
    return exit.generators.size() == 1 ? exit.generators[0] : Poly(1);
  }
};

using Valuation = std::map<Variable, Rational>;

struct TestCase {
  Valuation init;
  Valuation final_state;
  std::vector<std::string> path;  // transition names, length >= 1
};

struct SynthesisProblem {
  std::string name;
  std::vector<Variable> synth_vars;  // declared parameters C
  LassoProgram lasso;
  AlgebraicAssertion post;  // over V, parameter-free
  std::vector<TestCase> testcases;
  std::vector<std::string> warnings;  // denominator side-condition notes etc.

  bool parametric() const { return !synth_vars.empty(); }
};

// Tries to match the deterministic shape: guards h_j(V) = 0 plus exactly
// one update per program variable, x' g(V) - f(V) = 0.  The semantic side
// condition "g != 0 off the exit" is approximated syntactically: accepted
// for constant g and for rational multiples of a single exit generator;
// otherwise a warning is appended and the shape is still used.
std::optional<DeterministicView> classify_transition(
    const AlgebraicAssertion& assertion, const std::vector<Variable>& vars,
    const AlgebraicAssertion& exit, std::vector<std::string>* warnings);

struct ExecutionStep {
  Valuation state;
  bool satisfies_exit = false;
  bool guards_ok = true;  // guards of the transition taken FROM this state
};

struct ExecutionResult {
  std::vector<ExecutionStep> steps;  // k+1 states for a k-step path
  bool stem_ok = false;
  // True iff the state sequence is an execution: stem at the start, exit
  // exactly at the last state, every step enabled.
  bool valid_execution = false;
};

// Runs a parameter-free lasso along the given path of deterministic
// transitions.  Throws ExecutionError on denominator zero or guard
// violation, InputError on unknown transitions or parametric programs.
ExecutionResult execute(const LassoProgram& L, const Valuation& init,
                        const std::vector<std::string>& path);

Rational evaluate(const Poly& p, const Valuation& v);

}  // namespace lasso
