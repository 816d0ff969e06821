#include "polylasso/polylasso.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "errors.hpp"
#include "parser.hpp"
#include "workflow.hpp"

using namespace lasso;

struct pl_problem {
  SynthesisProblem problem;
};

struct pl_system {
  ConditionBuild build;
};

struct pl_result {
  int status = PL_RUN_INPUT_ERROR;
  Json report;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& msg) {
  if (error) *error = dup_string(msg);
}

// Maps C++ exceptions onto status codes at the library boundary.
template <class Fn>
pl_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    set_error(error, e.what());
    return PL_ERR_PARSE;
  } catch (const InputError& e) {
    set_error(error, e.what());
    return PL_ERR_INPUT;
  } catch (const ParametricLeadingCoefficient& e) {
    set_error(error, e.what());
    return PL_ERR_ALGEBRA;
  } catch (const ParametricInput& e) {
    set_error(error, e.what());
    return PL_ERR_ALGEBRA;
  } catch (const ResidualPrimedVariable& e) {
    set_error(error, e.what());
    return PL_ERR_ALGEBRA;
  } catch (const SolverFailure& e) {
    set_error(error, e.what());
    return PL_ERR_SOLVER;
  } catch (const Json::exception& e) {
    set_error(error, e.what());
    return PL_ERR_PARSE;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return PL_ERR_INTERNAL;
  }
}

BuildOptions to_build_options(const pl_build_options* opts) {
  BuildOptions b;
  if (!opts) return b;
  b.degree = opts->degree;
  if (opts->omega_degree >= 0) {
    b.omega.mode = OmegaSpec::Mode::Template;
    b.omega.degree = opts->omega_degree;
  }
  b.goal = opts->invariant_search ? Goal::InvariantSearch : Goal::Synthesis;
  if (opts->nontrivial == 0) b.nontrivial_override = false;
  if (opts->nontrivial == 1) b.nontrivial_override = true;
  if (opts->phi_exit_scaled) b.phi.mode = PhiSpec::Mode::ExitScaled;
  if (opts->phi_degree >= 0) b.phi.degree_override = opts->phi_degree;
  return b;
}

RunOptions to_run_options(const pl_build_options* build, const pl_solver_options* solver) {
  RunOptions r;
  r.build = to_build_options(build);
  if (solver) {
    if (solver->command) r.solver.command = solver->command;
    if (solver->timeout_sec > 0) r.solver.timeout_sec = solver->timeout_sec;
    if (solver->random_seed >= 0) r.solver.random_seed = solver->random_seed;
    if (solver->emit_path) r.emit_path = solver->emit_path;
    if (solver->model_path) r.model_path = solver->model_path;
    r.simplify = !solver->no_simplify;
  }
  return r;
}

}  // namespace

extern "C" {

const char* pl_version(void) { return "1.0.0"; }

const char* pl_status_name(pl_status s) {
  switch (s) {
    case PL_OK: return "ok";
    case PL_ERR_ARGUMENT: return "argument";
    case PL_ERR_PARSE: return "parse";
    case PL_ERR_INPUT: return "input";
    case PL_ERR_ALGEBRA: return "algebra";
    case PL_ERR_SOLVER: return "solver";
    case PL_ERR_INTERNAL: return "internal";
  }
  return "?";
}

void pl_string_free(char* s) { std::free(s); }

void pl_build_options_init(pl_build_options* opts) {
  if (!opts) return;
  opts->degree = 2;
  opts->omega_degree = -1;
  opts->invariant_search = 0;
  opts->nontrivial = -1;
  opts->phi_exit_scaled = 0;
  opts->phi_degree = -1;
}

void pl_solver_options_init(pl_solver_options* opts) {
  if (!opts) return;
  opts->command = nullptr;
  opts->timeout_sec = 0;
  opts->random_seed = -1;
  opts->emit_path = nullptr;
  opts->model_path = nullptr;
  opts->no_simplify = 0;
}

pl_status pl_problem_from_string(const char* text, pl_problem** out, char** error) {
  if (!text || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto p = std::make_unique<pl_problem>();
    p->problem = parse_problem(text);
    *out = p.release();
    return PL_OK;
  });
}

pl_status pl_problem_from_file(const char* path, pl_problem** out, char** error) {
  if (!path || !out) return PL_ERR_ARGUMENT;
  std::ifstream f(path);
  if (!f) {
    set_error(error, std::string("cannot open ") + path);
    return PL_ERR_INPUT;
  }
  std::ostringstream s;
  s << f.rdbuf();
  return pl_problem_from_string(s.str().c_str(), out, error);
}

void pl_problem_free(pl_problem* p) { delete p; }

pl_status pl_problem_info_json(const pl_problem* p, char** json) {
  if (!p || !json) return PL_ERR_ARGUMENT;
  return guarded(nullptr, [&] {
    Json info;
    info["name"] = p->problem.name;
    Json vars = Json::array();
    for (auto& v : p->problem.lasso.vars) vars.push_back(v.name);
    info["vars"] = vars;
    Json params = Json::array();
    for (auto& v : p->problem.synth_vars) params.push_back(v.name);
    info["params"] = params;
    Json transitions = Json::array();
    for (auto& t : p->problem.lasso.transitions)
      transitions.push_back({{"name", t.name}, {"deterministic", t.det.has_value()}});
    info["transitions"] = transitions;
    info["testcases"] = p->problem.testcases.size();
    info["has_post"] = !p->problem.post.is_true();
    info["has_exit"] = !p->problem.lasso.exit.is_true();
    info["warnings"] = p->problem.warnings;
    *json = dup_string(info.dump(2));
    return PL_OK;
  });
}

pl_status pl_problem_render(const pl_problem* p, char** text) {
  if (!p || !text) return PL_ERR_ARGUMENT;
  return guarded(nullptr, [&] {
    *text = dup_string(render_problem(p->problem));
    return PL_OK;
  });
}

pl_status pl_system_build(const pl_problem* p, const pl_build_options* opts, pl_system** out,
                          char** error) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto s = std::make_unique<pl_system>();
    s->build = assemble(p->problem, to_build_options(opts));
    *out = s.release();
    return PL_OK;
  });
}

void pl_system_free(pl_system* s) { delete s; }

size_t pl_system_unknowns(const pl_system* s) { return s ? s->build.system.unknowns.size() : 0; }
size_t pl_system_core_unknowns(const pl_system* s) {
  return s ? s->build.system.core_unknown_count : 0;
}
size_t pl_system_equalities(const pl_system* s) {
  return s ? s->build.system.equalities.size() : 0;
}
size_t pl_system_disequality_groups(const pl_system* s) {
  return s ? s->build.system.disequalities.size() : 0;
}

pl_status pl_system_smtlib(const pl_system* s, char** text) {
  if (!s || !text) return PL_ERR_ARGUMENT;
  return guarded(nullptr, [&] {
    *text = dup_string(emit_smtlib(s->build.system));
    return PL_OK;
  });
}

pl_status pl_system_json(const pl_system* s, char** json) {
  if (!s || !json) return PL_ERR_ARGUMENT;
  return guarded(nullptr, [&] {
    Json j;
    Json unknowns = Json::array();
    for (auto& v : s->build.system.unknowns) unknowns.push_back(v.name);
    j["unknowns"] = unknowns;
    j["core_unknowns"] = s->build.system.core_unknown_count;
    Json constraints = Json::array();
    for (auto& e : s->build.system.equalities)
      constraints.push_back(
          {{"kind", "equality"}, {"provenance", e.prov.str()}, {"poly", e.poly.str()}});
    for (auto& d : s->build.system.disequalities) {
      Json polys = Json::array();
      for (auto& p : d.polys) polys.push_back(p.str());
      constraints.push_back(
          {{"kind", "disequality"}, {"provenance", d.prov.str()}, {"polys", polys}});
    }
    j["constraints"] = constraints;
    j["warnings"] = s->build.system.warnings;
    *json = dup_string(j.dump(2));
    return PL_OK;
  });
}

pl_status pl_run(const pl_problem* p, const pl_build_options* build,
                 const pl_solver_options* solver, pl_result** out, char** error) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto r = std::make_unique<pl_result>();
    RunResult run = run_pipeline(p->problem, to_run_options(build, solver));
    r->status = run.status;
    r->report = std::move(run.report);
    *out = r.release();
    return PL_OK;
  });
}

void pl_result_free(pl_result* r) { delete r; }

pl_run_status pl_result_status(const pl_result* r) {
  return r ? static_cast<pl_run_status>(r->status) : PL_RUN_INPUT_ERROR;
}

pl_status pl_result_report_json(const pl_result* r, char** json) {
  if (!r || !json) return PL_ERR_ARGUMENT;
  *json = dup_string(r->report.dump(2));
  return PL_OK;
}

pl_status pl_verify_invariant(const pl_problem* p, const char* polynomial, pl_result** out,
                              char** error) {
  if (!p || !polynomial || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto r = std::make_unique<pl_result>();
    RunResult run = run_verify(p->problem, polynomial);
    r->status = run.status;
    r->report = std::move(run.report);
    *out = r.release();
    return PL_OK;
  });
}

pl_status pl_simulate(const pl_problem* p, const char* init_json, const char* path,
                      int testcase_index, pl_result** out, char** error) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Valuation init;
    std::vector<std::string> steps;
    if (testcase_index >= 0) {
      if (static_cast<size_t>(testcase_index) >= p->problem.testcases.size())
        throw InputError("test case index out of range");
      init = p->problem.testcases[testcase_index].init;
      steps = p->problem.testcases[testcase_index].path;
    } else {
      if (!init_json || !path) throw InputError("need an initial state and a path");
      Json j = Json::parse(init_json);
      for (auto& [key, value] : j.items()) {
        Variable var = program_var(key);
        bool known = false;
        for (auto& v : p->problem.lasso.vars)
          if (v == var) known = true;
        if (!known) throw InputError("unknown variable in initial state: " + key);
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        init[var] = rational_from_string(text);
      }
      std::stringstream ss(path);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) steps.push_back(item);
    }
    auto r = std::make_unique<pl_result>();
    RunResult run = run_simulate(p->problem, init, steps);
    r->status = run.status;
    r->report = std::move(run.report);
    *out = r.release();
    return PL_OK;
  });
}

}  // extern "C"
