#include "verify.hpp"

#include <sstream>

#include "division.hpp"
#include "errors.hpp"
#include "groebner.hpp"

namespace lasso {

namespace {

bool is_primed_var(const Variable& v) { return v.kind == VarKind::Program && v.primed; }
bool is_unknown_var(const Variable& v) { return v.is_unknown(); }

}  // namespace

InvariantReport check_invariant(const LassoProgram& L, const Poly& p) {
  if (p.is_zero()) throw InputError("the zero polynomial is not a useful invariant");
  if (p.has_var(is_unknown_var))
    throw InputError("invariant candidate must be parameter-free");

  MonomialOrder ord = L.default_order();
  InvariantReport report;

  GroebnerBasis stem_gb = buchberger(L.stem.generators, ord);
  report.stem_ok = normal_form(p, stem_gb).is_zero();

  int deg = p.degree().value_or(0);
  Poly exit_factor = L.exit_factor();
  Poly p_primed = p.primed();

  for (auto& t : L.transitions) {
    ConsecutionCheck check;
    check.transition = t.name;
    Poly q(1);
    if (t.det) {
      for (auto& u : t.det->updates)
        if (u.denominator != Poly(1)) q = q * u.denominator;
    }
    GroebnerBasis tau_gb = transition_basis(t, ord);
    Poly reduced = normal_form(q.pow(deg) * exit_factor * p_primed, tau_gb);
    if (reduced.has_var(is_primed_var))
      throw ResidualPrimedVariable("division by transition '" + t.name +
                                   "' left primed variables behind");
    DivisionResult dr = divide(reduced, {p}, ord);
    check.ok = dr.remainder.is_zero();
    if (check.ok)
      check.witness = dr.quotients[0];
    else
      check.note = "consecution remainder is not a multiple of the candidate "
                   "(not certifiable by this method)";
    report.consecutions.push_back(std::move(check));
  }
  return report;
}

bool check_post(const Poly& p, const AlgebraicAssertion& exit, const AlgebraicAssertion& post,
                const MonomialOrder& ord) {
  std::vector<Poly> gens = exit.generators;
  gens.push_back(p);
  GroebnerBasis gb = buchberger(gens, ord);
  for (auto& g : post.generators)
    if (!normal_form(g, gb).is_zero()) return false;
  return true;
}

LassoProgram instantiate_lasso(const LassoProgram& L,
                               const std::map<Variable, Rational>& alpha,
                               std::vector<std::string>* warnings) {
  std::map<Variable, Poly> bindings;
  for (auto& [v, q] : alpha) bindings.emplace(v, Poly(q));

  LassoProgram out;
  out.vars = L.vars;
  for (auto& g : L.stem.generators)
    out.stem.generators.push_back(g.substitute(bindings));
  for (auto& g : L.exit.generators)
    out.exit.generators.push_back(g.substitute(bindings));
  for (auto& t : L.transitions) {
    Transition nt;
    nt.name = t.name;
    for (auto& g : t.assertion.generators)
      nt.assertion.generators.push_back(g.substitute(bindings));
    nt.det = classify_transition(nt.assertion, out.vars, out.exit, warnings);
    out.transitions.push_back(std::move(nt));
  }
  return out;
}

SolutionReport check_solution(const SynthesisProblem& S,
                              const std::map<Variable, Rational>& assignment,
                              const Poly& psi) {
  SolutionReport report;
  report.instantiated_psi = instantiate(psi, assignment);
  if (report.instantiated_psi.has_var(is_unknown_var))
    throw InputError("assignment does not cover all template coefficients");

  std::vector<std::string> warnings;
  LassoProgram concrete = instantiate_lasso(S.lasso, assignment, &warnings);
  for (auto& t : concrete.transitions)
    if (!t.assertion.parameter_free())
      throw InputError("assignment does not cover all synthesis parameters");

  if (report.instantiated_psi.is_zero()) {
    report.failure = "instantiated invariant is the zero polynomial";
    return report;
  }

  report.invariant = check_invariant(concrete, report.instantiated_psi);
  if (!report.invariant.ok() && report.failure.empty())
    report.failure = "invariant certification failed";

  if (!S.post.is_true()) {
    report.post_ok = check_post(report.instantiated_psi, concrete.exit, S.post,
                                concrete.default_order());
    if (!*report.post_ok && report.failure.empty())
      report.failure = "post condition entailment failed";
  }

  for (size_t i = 0; i < S.testcases.size(); ++i) {
    const TestCase& tc = S.testcases[i];
    TestCaseCheck check;
    check.index = i;
    try {
      ExecutionResult run = execute(concrete, tc.init, tc.path);
      bool final_matches = true;
      for (auto& v : concrete.vars)
        if (run.steps.back().state.at(v) != tc.final_state.at(v)) final_matches = false;
      // With an empty exit condition every state satisfies it trivially, so
      // the exit pattern carries no information and is skipped, mirroring
      // the constraint generator.
      bool exit_ok = concrete.exit.is_true() || run.valid_execution;
      check.adhered = run.stem_ok && final_matches && exit_ok;
      if (!run.stem_ok)
        check.detail = "initial state violates the stem";
      else if (!final_matches)
        check.detail = "final state differs from the declared one";
      else if (!exit_ok)
        check.detail = "sequence is not a valid execution (exit pattern)";
      else if (concrete.exit.is_true())
        check.detail = "exit pattern skipped (empty exit condition)";
    } catch (const ExecutionError& e) {
      check.adhered = false;
      check.detail = e.what();
    }
    if (!check.adhered && report.failure.empty())
      report.failure = "test case " + std::to_string(i) + " not adhered to" +
                       (check.detail.empty() ? "" : " (" + check.detail + ")");
    report.testcases.push_back(std::move(check));
  }
  return report;
}

}  // namespace lasso
