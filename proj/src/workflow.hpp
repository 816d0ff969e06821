#pragma once

#include <optional>
#include <string>

#include "conditions.hpp"
#include "simplify.hpp"
#include "smt.hpp"
#include "verify.hpp"

#include "json.hpp"

namespace lasso {

using Json = nlohmann::json;

struct RunOptions {
  BuildOptions build;
  SolverConfig solver;
  bool simplify = true;
  std::optional<std::string> emit_path;   // dump the query sent to the solver
  std::optional<std::string> model_path;  // re-ingest solver output instead of solving
};

// Exit codes shared by the CLI and the C API.
enum RunStatus : int {
  RUN_CERTIFIED = 0,    // sat and independently certified
  RUN_UNSAT = 1,
  RUN_UNKNOWN = 2,      // solver unknown or timeout
  RUN_INPUT_ERROR = 3,
  RUN_NOT_CERTIFIED = 4,  // sat but certification failed
};

struct RunResult {
  int status = RUN_INPUT_ERROR;
  Json report;  // full machine-readable record of the run
};

// Parse -> assemble -> simplify -> solve -> reconstruct -> certify.
RunResult run_pipeline(const SynthesisProblem& problem, const RunOptions& opts);

// Direct invariant check (the `verify` command).
RunResult run_verify(const SynthesisProblem& problem, const std::string& poly_text);

// Concrete simulation (the `simulate` command).
RunResult run_simulate(const SynthesisProblem& problem, const Valuation& init,
                       const std::vector<std::string>& path);

Json system_stats(const ConditionBuild& build);
Json model_to_json(const SolverModel& model);

}  // namespace lasso
