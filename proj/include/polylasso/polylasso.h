/*
 * polylasso - constraint-based verification and synthesis of polynomial
 * lasso programs.
 *
 * C interface: opaque handles, integer status codes, and JSON documents
 * for structured results.  Every char* the library hands out must be
 * released with pl_string_free; handles with their matching *_free call.
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads concurrently.
 */
#ifndef POLYLASSO_H
#define POLYLASSO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PL_API __declspec(dllexport)
#else
#define PL_API __attribute__((visibility("default")))
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_ARGUMENT = 1,  /* null handle or out pointer */
  PL_ERR_PARSE = 2,     /* malformed problem text or polynomial */
  PL_ERR_INPUT = 3,     /* well-formed but unusable input */
  PL_ERR_ALGEBRA = 4,   /* parametric division, residual primed variables */
  PL_ERR_SOLVER = 5,    /* solver process or model trouble */
  PL_ERR_INTERNAL = 6
} pl_status;

/* Verdict/certification outcome of a run; mirrors the CLI exit codes. */
typedef enum pl_run_status {
  PL_RUN_CERTIFIED = 0,
  PL_RUN_UNSAT = 1,
  PL_RUN_UNKNOWN = 2,
  PL_RUN_INPUT_ERROR = 3,
  PL_RUN_NOT_CERTIFIED = 4
} pl_run_status;

typedef struct pl_problem pl_problem;
typedef struct pl_system pl_system;
typedef struct pl_result pl_result;

typedef struct pl_build_options {
  int degree;            /* invariant template degree; default 2 */
  int omega_degree;      /* -1 = constant one (default), >= 0 = template */
  int invariant_search;  /* 0 = synthesis goal, 1 = invariant search */
  int nontrivial;        /* -1 = automatic, 0 = off, 1 = on */
  int phi_exit_scaled;   /* 1 = exit-scaled consecution multiplier */
  int phi_degree;        /* -1 = automatic */
} pl_build_options;

typedef struct pl_solver_options {
  const char* command;   /* NULL = auto-detect (z3 on PATH, wasm fallback) */
  double timeout_sec;    /* <= 0 = default 600 */
  int random_seed;       /* < 0 = none */
  const char* emit_path; /* NULL = don't dump the query */
  const char* model_path; /* NULL = solve; else ingest solver output file */
  int no_simplify;       /* 1 = skip the linear elimination pass */
} pl_solver_options;

PL_API const char* pl_version(void);
PL_API const char* pl_status_name(pl_status s);
PL_API void pl_string_free(char* s);

PL_API void pl_build_options_init(pl_build_options* opts);
PL_API void pl_solver_options_init(pl_solver_options* opts);

/* ---- problems ---------------------------------------------------------- */

PL_API pl_status pl_problem_from_string(const char* text, pl_problem** out, char** error);
PL_API pl_status pl_problem_from_file(const char* path, pl_problem** out, char** error);
PL_API void pl_problem_free(pl_problem* p);

/* Summary: name, variables, parameters, transitions, test cases, warnings. */
PL_API pl_status pl_problem_info_json(const pl_problem* p, char** json);
/* Canonical rendering in the input format. */
PL_API pl_status pl_problem_render(const pl_problem* p, char** text);

/* ---- constraint systems ------------------------------------------------ */

PL_API pl_status pl_system_build(const pl_problem* p, const pl_build_options* opts,
                                 pl_system** out, char** error);
PL_API void pl_system_free(pl_system* s);

PL_API size_t pl_system_unknowns(const pl_system* s);
/* Unknowns excluding fresh test-case state variables. */
PL_API size_t pl_system_core_unknowns(const pl_system* s);
PL_API size_t pl_system_equalities(const pl_system* s);
PL_API size_t pl_system_disequality_groups(const pl_system* s);

/* Deterministic SMT-LIB 2 text (QF_NRA). */
PL_API pl_status pl_system_smtlib(const pl_system* s, char** text);
/* Structured dump: one record per constraint with provenance. */
PL_API pl_status pl_system_json(const pl_system* s, char** json);

/* ---- solving and certification ----------------------------------------- */

/* Assemble, solve and certify in one step.  The returned result carries a
 * pl_run_status and a JSON report; a nonzero pl_status means the pipeline
 * itself failed (bad input, no solver), not that the answer was unsat. */
PL_API pl_status pl_run(const pl_problem* p, const pl_build_options* build,
                        const pl_solver_options* solver, pl_result** out, char** error);
PL_API void pl_result_free(pl_result* r);

PL_API pl_run_status pl_result_status(const pl_result* r);
PL_API pl_status pl_result_report_json(const pl_result* r, char** json);

/* ---- direct checks ------------------------------------------------------ */

/* Certify a candidate invariant, given in the polynomial syntax of the
 * input format (e.g. "s + x0*y - x0*y0"). */
PL_API pl_status pl_verify_invariant(const pl_problem* p, const char* polynomial,
                                     pl_result** out, char** error);

/* Run the lasso concretely.  init is a JSON object {"x0": "3", ...}
 * (values are rational strings); path is a comma-separated transition
 * list.  Pass testcase_index >= 0 to use a declared test case instead. */
PL_API pl_status pl_simulate(const pl_problem* p, const char* init_json, const char* path,
                             int testcase_index, pl_result** out, char** error);

#ifdef __cplusplus
}
#endif

#endif /* POLYLASSO_H */
