#pragma once

#include <optional>
#include <string>

#include "conditions.hpp"

namespace lasso {

struct SolverConfig {
  std::string command;       // empty = auto-detect (see resolve_solver_command)
  double timeout_sec = 600;  // wall clock per solver call
  std::string logic = "QF_NRA";
  std::optional<unsigned> random_seed;
  // Deterministic work cap (z3's :rlimit); the solver answers unknown when
  // it runs out.  Useful for batch runs over many generated problems.
  std::optional<unsigned long> resource_limit;
};

// Model value: exact rational when the solver produced one, otherwise the
// solver's own term (e.g. a root-obj expression) kept verbatim.
struct ModelValue {
  std::optional<Rational> rational;
  std::string term;

  bool is_rational() const { return rational.has_value(); }
};

struct SolverModel {
  std::map<Variable, ModelValue> values;

  bool all_rational() const {
    for (auto& [v, mv] : values)
      if (!mv.is_rational()) return false;
    return true;
  }
  std::map<Variable, Rational> rationals() const;
};

enum class SolverVerdict { Sat, Unsat, Unknown, Error };

struct SolveOutcome {
  SolverVerdict verdict = SolverVerdict::Error;
  SolverModel model;   // populated on Sat
  std::string detail;  // timeout note, parse diagnostics, stderr tail
};

// Deterministic SMT-LIB 2 text for the system: QF_NRA, one Real constant
// per unknown in system order, equalities (= term 0), one
// (or (not (= p 0)) ...) per disequality group, then check-sat/get-model.
std::string emit_smtlib(const ConstraintSystem& cs);

// Runs the solver as a child process, feeding the emitted script on stdin.
SolveOutcome solve(const ConstraintSystem& cs, const SolverConfig& cfg);

// Exact substitution check for all-rational models; for models with
// algebraic values, a second solver run with the model values asserted.
// The two routes agree on rational models by construction (the exact check
// runs first and a disagreement raises SolverFailure).
bool recheck_model(const ConstraintSystem& cs, const SolverModel& model,
                   const SolverConfig& cfg);

// Parses solver output (verdict line plus optional model S-expression).
SolveOutcome parse_solver_output(const std::string& output,
                                 const std::vector<Variable>& unknowns);

// Explicit command if given, else $POLYLASSO_SOLVER, else "z3 -in" when z3
// is on PATH, else a bundled Node wrapper around the z3 wasm build.
std::string resolve_solver_command(const std::optional<std::string>& explicit_cmd);

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};
ProcessResult run_process(const std::string& command, const std::string& input,
                          double timeout_sec);

}  // namespace lasso
