#include "workflow.hpp"

#include <chrono>
#include <fstream>

#include "errors.hpp"
#include "parser.hpp"

namespace lasso {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Json invariant_report_json(const InvariantReport& r) {
  Json consecutions = Json::array();
  for (auto& c : r.consecutions) {
    consecutions.push_back({{"transition", c.transition},
                            {"ok", c.ok},
                            {"witness", c.witness.str()},
                            {"note", c.note}});
  }
  return {{"stem_ok", r.stem_ok}, {"consecutions", consecutions}, {"ok", r.ok()}};
}

Json solution_report_json(const SolutionReport& r) {
  Json testcases = Json::array();
  for (auto& t : r.testcases)
    testcases.push_back({{"index", t.index}, {"adhered", t.adhered}, {"detail", t.detail}});
  Json j = {{"invariant", invariant_report_json(r.invariant)},
            {"testcases", testcases},
            {"instantiated_invariant", r.instantiated_psi.str()},
            {"certified", r.certified()},
            {"failure", r.failure}};
  if (r.post_ok) j["post_ok"] = *r.post_ok;
  return j;
}

Json render_instantiated_program(const SynthesisProblem& S,
                                 const std::map<Variable, Rational>& alpha) {
  SynthesisProblem inst = S;
  inst.synth_vars.clear();
  inst.testcases = S.testcases;
  inst.lasso = instantiate_lasso(S.lasso, alpha, nullptr);
  std::map<Variable, Poly> bindings;
  for (auto& [v, q] : alpha) bindings.emplace(v, Poly(q));
  AlgebraicAssertion post;
  for (auto& g : S.post.generators) post.generators.push_back(g.substitute(bindings));
  inst.post = post;
  return render_problem(inst);
}

}  // namespace

Json system_stats(const ConditionBuild& build) {
  size_t diseq_members = 0;
  for (auto& d : build.system.disequalities) diseq_members += d.polys.size();
  return {{"unknowns", build.system.unknowns.size()},
          {"core_unknowns", build.system.core_unknown_count},
          {"template_coefficients", build.psi_spec.coefficient_count()},
          {"equalities", build.system.equalities.size()},
          {"disequality_groups", build.system.disequalities.size()},
          {"disequality_members", diseq_members}};
}

Json model_to_json(const SolverModel& model) {
  Json j = Json::object();
  for (auto& [v, mv] : model.values) {
    if (mv.is_rational())
      j[v.name] = rational_to_string(*mv.rational);
    else
      j[v.name] = mv.term;  // opaque algebraic term, solver syntax
  }
  return j;
}

RunResult run_pipeline(const SynthesisProblem& problem, const RunOptions& opts) {
  RunResult result;
  Json& report = result.report;
  report["problem"] = problem.name;
  report["mode"] = opts.build.goal == Goal::Synthesis ? "synthesis" : "invariants";
  report["degree"] = opts.build.degree;

  if (opts.build.goal == Goal::Synthesis && problem.post.is_true() &&
      problem.testcases.empty()) {
    result.status = RUN_INPUT_ERROR;
    report["error"] = "synthesis needs a post condition or test cases";
    return result;
  }

  auto t0 = std::chrono::steady_clock::now();
  ConditionBuild build = assemble(problem, opts.build);
  report["system"] = system_stats(build);
  report["template"] = build.psi.str();
  report["warnings"] = build.system.warnings;

  SimplifyResult simplified;
  const ConstraintSystem* query = &build.system;
  if (opts.simplify) {
    simplified = simplify_linear(build.system);
    report["simplified"] = {{"unknowns", simplified.system.unknowns.size()},
                            {"equalities", simplified.system.equalities.size()},
                            {"eliminated", simplified.bindings.size()},
                            {"unsat", simplified.unsat}};
    query = &simplified.system;
  }
  report["generation_seconds"] = seconds_since(t0);

  if (opts.emit_path) {
    std::ofstream f(*opts.emit_path);
    f << emit_smtlib(*query);
    report["emitted_to"] = *opts.emit_path;
  }

  SolveOutcome outcome;
  auto t1 = std::chrono::steady_clock::now();
  if (opts.simplify && simplified.unsat) {
    outcome.verdict = SolverVerdict::Unsat;
    outcome.detail = "ground contradiction during linear simplification";
  } else if (opts.model_path) {
    std::ifstream f(*opts.model_path);
    if (!f) {
      result.status = RUN_INPUT_ERROR;
      report["error"] = "cannot read model file " + *opts.model_path;
      return result;
    }
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    outcome = parse_solver_output(text, query->unknowns);
    report["model_source"] = *opts.model_path;
  } else {
    outcome = solve(*query, opts.solver);
  }
  report["solver_seconds"] = seconds_since(t1);
  report["solver_detail"] = outcome.detail;

  switch (outcome.verdict) {
    case SolverVerdict::Unsat:
      result.status = RUN_UNSAT;
      report["verdict"] = "unsat";
      return result;
    case SolverVerdict::Unknown:
      result.status = RUN_UNKNOWN;
      report["verdict"] = "unknown";
      return result;
    case SolverVerdict::Error:
      result.status = RUN_UNKNOWN;
      report["verdict"] = "error";
      return result;
    case SolverVerdict::Sat:
      break;
  }
  report["verdict"] = "sat";

  // Rebuild a full model over the original unknowns.
  SolverModel model = outcome.model;
  if (opts.simplify && !simplified.bindings.empty()) {
    if (model.all_rational()) {
      auto full = extend_model(model.rationals(), simplified.bindings);
      SolverModel extended;
      for (auto& [v, q] : full) extended.values[v] = ModelValue{q, rational_to_string(q)};
      model = extended;
    }
  }
  report["model"] = model_to_json(model);

  if (model.all_rational()) {
    auto alpha = model.rationals();
    SolutionReport cert = check_solution(problem, alpha, build.psi);
    report["certification"] = solution_report_json(cert);
    report["certification"]["route"] = "exact";
    report["invariant"] = cert.instantiated_psi.str();
    if (problem.parametric())
      report["synthesized_program"] = render_instantiated_program(problem, alpha);
    // Cross-check against the full constraint system as well.
    bool system_ok = satisfies(build.system, alpha);
    report["certification"]["system_satisfied"] = system_ok;
    result.status = cert.certified() && system_ok ? RUN_CERTIFIED : RUN_NOT_CERTIFIED;
  } else {
    // Algebraic model values: certification goes through the solver.
    bool ok = false;
    std::string note;
    try {
      ok = recheck_model(*query, model, opts.solver);
    } catch (const SolverFailure& f) {
      note = f.what();
    }
    report["certification"] = {{"route", "solver"},
                               {"recheck_sat", ok},
                               {"note", note.empty()
                                            ? "model contains algebraic values; certified by "
                                              "re-asserting them over the constraints"
                                            : note}};
    result.status = ok ? RUN_CERTIFIED : RUN_NOT_CERTIFIED;
  }
  return result;
}

RunResult run_verify(const SynthesisProblem& problem, const std::string& poly_text) {
  RunResult result;
  Json& report = result.report;
  report["problem"] = problem.name;
  if (problem.parametric()) {
    result.status = RUN_INPUT_ERROR;
    report["error"] = "cannot verify an invariant of a parametric program";
    return result;
  }
  Poly candidate = parse_poly(poly_text, problem);
  report["candidate"] = candidate.str();
  InvariantReport inv = check_invariant(problem.lasso, candidate);
  report["invariant"] = invariant_report_json(inv);
  bool ok = inv.ok();
  if (!problem.post.is_true()) {
    bool post_ok = check_post(candidate, problem.lasso.exit, problem.post,
                              problem.lasso.default_order());
    report["post_ok"] = post_ok;
    ok = ok && post_ok;
  }
  report["verdict"] = ok ? "pass" : "fail";
  result.status = ok ? RUN_CERTIFIED : RUN_NOT_CERTIFIED;
  return result;
}

RunResult run_simulate(const SynthesisProblem& problem, const Valuation& init,
                       const std::vector<std::string>& path) {
  RunResult result;
  Json& report = result.report;
  report["problem"] = problem.name;
  if (problem.parametric()) {
    result.status = RUN_INPUT_ERROR;
    report["error"] = "cannot simulate a parametric program";
    return result;
  }
  ExecutionResult run;
  try {
    run = execute(problem.lasso, init, path);
  } catch (const ExecutionError& e) {
    result.status = RUN_NOT_CERTIFIED;
    report["error"] = e.what();
    report["failed_step"] = e.step;
    return result;
  }
  Json states = Json::array();
  for (auto& step : run.steps) {
    Json sv = Json::object();
    for (auto& [v, q] : step.state) sv[v.name] = rational_to_string(q);
    states.push_back({{"state", sv}, {"exit", step.satisfies_exit}});
  }
  report["states"] = states;
  report["stem_ok"] = run.stem_ok;
  report["valid_execution"] = run.valid_execution;
  result.status = RUN_CERTIFIED;
  return result;
}

}  // namespace lasso
