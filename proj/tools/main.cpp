// Command-line front end for the polylasso shared library.
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polylasso/polylasso.h"

#ifndef POLYLASSO_CORPUS_DIR
#define POLYLASSO_CORPUS_DIR "corpus"
#endif

using Json = nlohmann::json;

namespace {

struct CString {
  char* ptr = nullptr;
  ~CString() { pl_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct Problem {
  pl_problem* ptr = nullptr;
  ~Problem() { pl_problem_free(ptr); }
};

struct Result {
  pl_result* ptr = nullptr;
  ~Result() { pl_result_free(ptr); }
};

struct SystemHandle {
  pl_system* ptr = nullptr;
  ~SystemHandle() { pl_system_free(ptr); }
};

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return PL_RUN_INPUT_ERROR;
}

bool load_problem(const std::string& path, Problem& problem) {
  CString err;
  if (pl_problem_from_file(path.c_str(), &problem.ptr, &err.ptr) != PL_OK) {
    std::cerr << "error: " << err.str() << "\n";
    return false;
  }
  return true;
}

Json result_report(const Result& result) {
  CString json;
  pl_result_report_json(result.ptr, &json.ptr);
  return Json::parse(json.str());
}

void print_certification(const Json& report) {
  if (!report.contains("certification")) return;
  const Json& cert = report["certification"];
  if (cert.value("route", "") == "solver") {
    std::cout << "certification: solver recheck "
              << (cert.value("recheck_sat", false) ? "passed" : "FAILED") << "\n";
    std::cout << "  " << cert.value("note", "") << "\n";
    return;
  }
  const Json& inv = cert["invariant"];
  std::cout << "certification (exact):\n";
  std::cout << "  stem: " << (inv.value("stem_ok", false) ? "ok" : "FAIL") << "\n";
  for (auto& c : inv["consecutions"]) {
    std::cout << "  consecution " << c.value("transition", "") << ": "
              << (c.value("ok", false) ? "ok" : "FAIL");
    if (c.value("ok", false)) std::cout << "  (witness " << c.value("witness", "") << ")";
    std::cout << "\n";
  }
  if (cert.contains("post_ok"))
    std::cout << "  post: " << (cert["post_ok"].get<bool>() ? "ok" : "FAIL") << "\n";
  for (auto& t : cert["testcases"])
    std::cout << "  testcase " << t.value("index", 0) << ": "
              << (t.value("adhered", false) ? "adhered" : "FAIL " + t.value("detail", ""))
              << "\n";
  if (cert.contains("system_satisfied"))
    std::cout << "  constraint system satisfied: "
              << (cert["system_satisfied"].get<bool>() ? "yes" : "NO") << "\n";
}

int print_run_result(const Result& result, bool json_mode) {
  Json report = result_report(result);
  int status = pl_result_status(result.ptr);
  if (json_mode) {
    report["exit_code"] = status;
    std::cout << report.dump(2) << "\n";
    return status;
  }
  if (report.contains("error")) return fail(report["error"].get<std::string>());

  std::cout << "verdict: " << report.value("verdict", "?") << "\n";
  if (report.contains("system")) {
    const Json& s = report["system"];
    std::cout << "constraints: " << s.value("equalities", 0) << " equalities, "
              << s.value("disequality_groups", 0) << " disequality groups over "
              << s.value("unknowns", 0) << " unknowns (" << s.value("core_unknowns", 0)
              << " core)\n";
  }
  for (auto& w : report.value("warnings", Json::array()))
    std::cout << "warning: " << w.get<std::string>() << "\n";
  if (report.contains("invariant"))
    std::cout << "invariant: " << report["invariant"].get<std::string>() << " = 0\n";
  if (report.contains("synthesized_program"))
    std::cout << "synthesized program:\n" << report["synthesized_program"].get<std::string>();
  if (report.contains("model") && report["model"].size() <= 64) {
    std::cout << "model:";
    for (auto& [k, v] : report["model"].items())
      std::cout << " " << k << "=" << v.get<std::string>();
    std::cout << "\n";
  }
  print_certification(report);
  std::cout << "generation: " << report.value("generation_seconds", 0.0)
            << "s, solving: " << report.value("solver_seconds", 0.0) << "s\n";
  switch (status) {
    case PL_RUN_CERTIFIED: std::cout << "result: certified\n"; break;
    case PL_RUN_UNSAT: std::cout << "result: unsat\n"; break;
    case PL_RUN_UNKNOWN:
      std::cout << "result: unknown (" << report.value("solver_detail", "") << ")\n";
      break;
    case PL_RUN_NOT_CERTIFIED: std::cout << "result: SAT BUT NOT CERTIFIED\n"; break;
    default: break;
  }
  return status;
}

struct CommonOpts {
  int degree = 2;
  std::string omega = "one";
  bool no_nontrivial = false;
  std::string solver_cmd;
  double timeout = 600;
  std::string emit;
  std::string model;
  bool json = false;
  bool no_simplify = false;
  int seed = -1;
  int phi_degree = -1;
  bool phi_exit_scaled = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--degree", o.degree, "invariant template degree")->check(CLI::Range(0, 8));
  cmd->add_option("--omega", o.omega, "post multiplier: one | template:<k>");
  cmd->add_flag("--no-nontrivial", o.no_nontrivial, "drop the nontriviality constraint");
  cmd->add_option("--solver-cmd", o.solver_cmd, "solver command reading SMT-LIB on stdin");
  cmd->add_option("--timeout", o.timeout, "solver timeout in seconds");
  cmd->add_option("--emit", o.emit, "dump the SMT query to this path");
  cmd->add_option("--model", o.model, "ingest solver output from this file instead of solving");
  cmd->add_flag("--json", o.json, "machine-readable output");
  cmd->add_flag("--no-simplify", o.no_simplify, "skip the linear elimination pass");
  cmd->add_option("--seed", o.seed, "solver random seed");
  cmd->add_option("--phi-degree", o.phi_degree, "override the consecution multiplier degree");
  cmd->add_flag("--phi-exit-scaled", o.phi_exit_scaled,
                "use an exit-scaled consecution multiplier");
}

bool fill_options(const CommonOpts& o, bool invariant_search, pl_build_options& build,
                  pl_solver_options& solver, std::string& error) {
  pl_build_options_init(&build);
  pl_solver_options_init(&solver);
  build.degree = o.degree;
  build.invariant_search = invariant_search ? 1 : 0;
  if (o.no_nontrivial) build.nontrivial = 0;
  if (o.omega == "one") {
    build.omega_degree = -1;
  } else if (o.omega.rfind("template:", 0) == 0) {
    build.omega_degree = std::stoi(o.omega.substr(9));
  } else {
    error = "bad --omega value: " + o.omega;
    return false;
  }
  build.phi_exit_scaled = o.phi_exit_scaled ? 1 : 0;
  build.phi_degree = o.phi_degree;
  if (!o.solver_cmd.empty()) solver.command = o.solver_cmd.c_str();
  solver.timeout_sec = o.timeout;
  solver.random_seed = o.seed;
  if (!o.emit.empty()) solver.emit_path = o.emit.c_str();
  if (!o.model.empty()) solver.model_path = o.model.c_str();
  solver.no_simplify = o.no_simplify ? 1 : 0;
  return true;
}

int run_command(const std::string& file, const CommonOpts& opts, bool invariant_search) {
  Problem problem;
  if (!load_problem(file, problem)) return PL_RUN_INPUT_ERROR;
  pl_build_options build;
  pl_solver_options solver;
  std::string error;
  if (!fill_options(opts, invariant_search, build, solver, error)) return fail(error);
  Result result;
  CString err;
  pl_status st = pl_run(problem.ptr, &build, &solver, &result.ptr, &err.ptr);
  if (st == PL_ERR_SOLVER) {
    fail(err.str());
    return PL_RUN_UNKNOWN;
  }
  if (st != PL_OK) return fail(err.str());
  return print_run_result(result, opts.json);
}

struct BenchEntry {
  std::string name;
  int degree;
  bool synthesis;
  bool slow;
};

const std::vector<BenchEntry> kBench = {
    {"product", 2, false, false},    {"productS", 2, true, false},
    {"productSY", 2, true, false},   {"product2", 3, false, true},
    {"product2S", 3, true, true},    {"gcd_lcm", 2, false, false},
    {"gcd_lcmS", 2, true, false},    {"div_mod", 2, false, false},
    {"div_modS", 2, true, false},    {"root2", 2, false, false},
    {"root2S", 2, true, false},      {"squareS", 2, true, false},
    {"cubeS", 3, true, true},
};

int run_bench(const std::string& corpus, const CommonOpts& opts, bool slow) {
  std::printf("%-11s %4s %4s %6s %6s %9s %9s  %s\n", "name", "deg", "#tc", "#vars", "#eqs",
              "gen(s)", "solve(s)", "result");
  bool all_ok = true;
  for (auto& entry : kBench) {
    if (entry.slow && !slow) {
      std::printf("%-11s %4d %28s\n", entry.name.c_str(), entry.degree,
                  "(skipped; use --slow)");
      continue;
    }
    Problem problem;
    if (!load_problem(corpus + "/" + entry.name + ".lasso", problem)) return 3;
    size_t testcases = 0;
    {
      CString info;
      if (pl_problem_info_json(problem.ptr, &info.ptr) == PL_OK)
        testcases = Json::parse(info.str()).value("testcases", 0);
    }
    CommonOpts local = opts;
    local.degree = entry.degree;
    pl_build_options build;
    pl_solver_options solver;
    std::string error;
    if (!fill_options(local, !entry.synthesis, build, solver, error)) return fail(error);
    Result result;
    CString err;
    pl_status st = pl_run(problem.ptr, &build, &solver, &result.ptr, &err.ptr);
    if (st != PL_OK) return fail(err.str());
    Json report = result_report(result);
    int status = pl_result_status(result.ptr);
    const char* verdict_text = status == PL_RUN_CERTIFIED       ? "certified"
                               : status == PL_RUN_UNSAT         ? "unsat"
                               : status == PL_RUN_UNKNOWN       ? "unknown"
                               : status == PL_RUN_NOT_CERTIFIED ? "NOT CERTIFIED"
                                                                : "error";
    all_ok = all_ok && status == PL_RUN_CERTIFIED;
    std::printf("%-11s %4d %4zu %6d %6d %9.2f %9.2f  %s\n", entry.name.c_str(), entry.degree,
                testcases, report["system"].value("core_unknowns", 0),
                report["system"].value("equalities", 0),
                report.value("generation_seconds", 0.0), report.value("solver_seconds", 0.0),
                verdict_text);
  }
  return all_ok ? 0 : PL_RUN_NOT_CERTIFIED;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification and synthesis of polynomial lasso programs"};
  app.require_subcommand(1);

  std::string file;
  CommonOpts synth_opts, inv_opts, bench_opts;

  auto* synth = app.add_subcommand("synth", "synthesize program parameters and an invariant");
  synth->add_option("file", file, "problem file")->required();
  add_common(synth, synth_opts);

  auto* inv = app.add_subcommand("invariants", "find a certified invariant");
  inv->add_option("file", file, "problem file")->required();
  add_common(inv, inv_opts);

  auto* verify = app.add_subcommand("verify", "check a candidate invariant");
  verify->add_option("file", file, "problem file")->required();
  std::string invariant_text;
  verify->add_option("--invariant", invariant_text, "candidate polynomial")->required();
  bool verify_json = false;
  verify->add_flag("--json", verify_json, "machine-readable output");

  auto* simulate = app.add_subcommand("simulate", "run the lasso concretely");
  simulate->add_option("file", file, "problem file")->required();
  std::string init_json, path_csv;
  int testcase_index = -1;
  bool sim_json = false;
  simulate->add_option("--init", init_json, "initial state, e.g. {\"x0\":\"3\",\"y\":\"1/2\"}");
  simulate->add_option("--path", path_csv, "comma-separated transition names");
  simulate->add_option("--testcase", testcase_index, "use a declared test case");
  simulate->add_flag("--json", sim_json, "machine-readable output");

  auto* bench = app.add_subcommand("bench", "run the bundled corpus");
  std::string corpus = POLYLASSO_CORPUS_DIR;
  bool slow = false;
  bench->add_option("--corpus", corpus, "corpus directory");
  bench->add_flag("--slow", slow, "include the long-running degree-3 problems");
  add_common(bench, bench_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return run_command(file, synth_opts, false);
    if (inv->parsed()) return run_command(file, inv_opts, true);
    if (verify->parsed()) {
      Problem problem;
      if (!load_problem(file, problem)) return PL_RUN_INPUT_ERROR;
      Result result;
      CString err;
      pl_status st = pl_verify_invariant(problem.ptr, invariant_text.c_str(), &result.ptr,
                                         &err.ptr);
      if (st != PL_OK) return fail(err.str());
      Json report = result_report(result);
      int status = pl_result_status(result.ptr);
      if (verify_json) {
        report["exit_code"] = status;
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << (status == PL_RUN_CERTIFIED ? "PASS" : "FAIL") << "\n";
        std::cout << report["invariant"].dump(2) << "\n";
        if (report.contains("post_ok"))
          std::cout << "post entailment: " << (report["post_ok"].get<bool>() ? "ok" : "FAIL")
                    << "\n";
      }
      return status;
    }
    if (simulate->parsed()) {
      Problem problem;
      if (!load_problem(file, problem)) return PL_RUN_INPUT_ERROR;
      Result result;
      CString err;
      pl_status st = pl_simulate(problem.ptr, init_json.empty() ? nullptr : init_json.c_str(),
                                 path_csv.empty() ? nullptr : path_csv.c_str(),
                                 testcase_index, &result.ptr, &err.ptr);
      if (st != PL_OK) return fail(err.str());
      Json report = result_report(result);
      int status = pl_result_status(result.ptr);
      if (sim_json) {
        report["exit_code"] = status;
        std::cout << report.dump(2) << "\n";
        return status;
      }
      if (report.contains("error")) {
        std::cerr << "execution failed: " << report["error"].get<std::string>() << "\n";
        return status;
      }
      size_t i = 0;
      for (auto& s : report["states"]) {
        std::cout << "state " << i++ << ":";
        for (auto& [k, v] : s["state"].items())
          std::cout << " " << k << "=" << v.get<std::string>();
        if (s.value("exit", false)) std::cout << "  [exit]";
        std::cout << "\n";
      }
      std::cout << (report.value("valid_execution", false) ? "valid execution"
                                                           : "not a valid execution")
                << "\n";
      return status;
    }
    if (bench->parsed()) return run_bench(corpus, bench_opts, slow);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 0;
}
