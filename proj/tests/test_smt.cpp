#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "errors.hpp"
#include "doctest.h"

#include "published.hpp"
#include "simplify.hpp"
#include "smt.hpp"

using namespace lasso;
using namespace lasso::testutil;

namespace {

bool solver_available() {
  try {
    resolve_solver_command(std::nullopt);
    return true;
  } catch (const SolverFailure&) {
    return false;
  }
}

ConstraintSystem tiny_system(std::vector<Poly> eqs, std::vector<Variable> unknowns) {
  ConstraintSystem cs;
  cs.unknowns = std::move(unknowns);
  cs.core_unknown_count = cs.unknowns.size();
  for (auto& e : eqs) cs.equalities.push_back({e, {ConstraintTag::Stem, ""}});
  return cs;
}

}  // namespace

TEST_CASE("emission: golden text for a small system") {
  Variable a0 = template_var("a0"), a1 = template_var("a1"), a2 = template_var("a2");
  ConstraintSystem cs;
  cs.unknowns = {a0, a1, a2};
  cs.equalities.push_back({Poly(a0) + Poly(a1) + Poly(a2), {ConstraintTag::Stem, ""}});
  cs.equalities.push_back(
      {Poly(Rational(1, 4)) * Poly(a0) - Poly(1), {ConstraintTag::Post, "0"}});
  DisequalityGroup g;
  g.prov = {ConstraintTag::Nontriviality, ""};
  g.polys = {Poly(a0), Poly(a1) * Poly(a1)};
  cs.disequalities.push_back(g);

  std::string expected =
      "(set-logic QF_NRA)\n"
      "(declare-const a0 Real)\n"
      "(declare-const a1 Real)\n"
      "(declare-const a2 Real)\n"
      "(assert (= (+ a0 a1 a2) 0))\n"
      "(assert (= (+ (- 1) (* (/ 1 4) a0)) 0))\n"
      "(assert (or (not (= a0 0)) (not (= (* a1 a1) 0))))\n"
      "(check-sat)\n"
      "(get-model)\n";
  CHECK(emit_smtlib(cs) == expected);
}

TEST_CASE("emission: empty system is just the header and check-sat") {
  ConstraintSystem cs;
  CHECK(emit_smtlib(cs) == "(set-logic QF_NRA)\n(check-sat)\n");
}

TEST_CASE("emission is deterministic across rebuilds") {
  auto problem = load_corpus("productSY");
  BuildOptions opts;
  std::string first = emit_smtlib(assemble(problem, opts).system);
  for (int i = 0; i < 3; ++i) {
    auto again = load_corpus("productSY");
    CHECK(emit_smtlib(assemble(again, opts).system) == first);
  }
  CHECK(first.find("(/ 1 ") == std::string::npos);  // integral data here
}

TEST_CASE("model parsing: rationals, decimals, negatives, root objects") {
  Variable a = template_var("a"), b = template_var("b"), c = template_var("c");
  std::string output =
      "sat\n"
      "(model\n"
      "  (define-fun a () Real (/ 1.0 4.0))\n"
      "  (define-fun b () Real (- 2.5))\n"
      "  (define-fun c () Real (root-obj (+ (^ x 2) (- 2)) 2))\n"
      ")\n";
  SolveOutcome out = parse_solver_output(output, {a, b, c});
  REQUIRE(out.verdict == SolverVerdict::Sat);
  CHECK(out.model.values.at(a).rational == Rational(1, 4));
  CHECK(out.model.values.at(b).rational == Rational(-5, 2));
  CHECK(!out.model.values.at(c).is_rational());
  CHECK(out.model.values.at(c).term.find("root-obj") != std::string::npos);
  CHECK(!out.model.all_rational());
}

TEST_CASE("model parsing: modern z3 prints a bare binding list") {
  Variable a = template_var("a");
  SolveOutcome out = parse_solver_output("sat\n((define-fun a () Real 3.0))\n", {a});
  REQUIRE(out.verdict == SolverVerdict::Sat);
  CHECK(out.model.values.at(a).rational == Rational(3));
}

TEST_CASE("model parsing: missing unknowns are completed with zero") {
  Variable a = template_var("a"), b = template_var("b");
  SolveOutcome out = parse_solver_output("sat\n((define-fun a () Real 1.0))\n", {a, b});
  CHECK(out.model.values.at(b).rational == Rational(0));
  CHECK(out.detail.find("defaulted") != std::string::npos);
}

TEST_CASE("verdict parsing") {
  CHECK(parse_solver_output("unsat\n", {}).verdict == SolverVerdict::Unsat);
  CHECK(parse_solver_output("unknown\n", {}).verdict == SolverVerdict::Unknown);
  CHECK(parse_solver_output("", {}).verdict == SolverVerdict::Error);
  CHECK(parse_solver_output("(error \"boom\")\n", {}).verdict == SolverVerdict::Error);
  // leading noise such as unsupported-option warnings is ignored
  CHECK(parse_solver_output("unsupported\nsat\n", {}).verdict == SolverVerdict::Sat);
}

TEST_CASE("solving tiny systems end to end" * doctest::skip(!solver_available())) {
  Variable a = template_var("a");
  SolverConfig cfg;
  cfg.timeout_sec = 120;

  SUBCASE("a = 0 and a = 1 is unsat") {
    auto cs = tiny_system({Poly(a), Poly(a) - Poly(1)}, {a});
    CHECK(solve(cs, cfg).verdict == SolverVerdict::Unsat);
  }
  SUBCASE("a^2 = 4 has a rational model") {
    auto cs = tiny_system({Poly(a) * Poly(a) - Poly(4)}, {a});
    SolveOutcome out = solve(cs, cfg);
    REQUIRE(out.verdict == SolverVerdict::Sat);
    REQUIRE(out.model.values.at(a).is_rational());
    Rational v = *out.model.values.at(a).rational;
    CHECK((v == 2 || v == -2));
    CHECK(recheck_model(cs, out.model, cfg));
  }
  SUBCASE("an empty system is sat") {
    ConstraintSystem cs;
    CHECK(solve(cs, cfg).verdict == SolverVerdict::Sat);
  }
  SUBCASE("algebraic model values round-trip through the recheck") {
    // a^2 = 2 has no rational solution: the solver answers with a root
    // object, and certification must go through the solver recheck.
    auto cs = tiny_system({Poly(a) * Poly(a) - Poly(2)}, {a});
    SolveOutcome out = solve(cs, cfg);
    REQUIRE(out.verdict == SolverVerdict::Sat);
    CHECK(!out.model.all_rational());
    CHECK(recheck_model(cs, out.model, cfg));
  }
  SUBCASE("a wrong model is rejected by the recheck") {
    auto cs = tiny_system({Poly(a) - Poly(1)}, {a});
    SolverModel wrong;
    wrong.values[a] = ModelValue{Rational(2), "2"};
    CHECK(!recheck_model(cs, wrong, cfg));
  }
}

TEST_CASE("exact substitution agrees with the published models" *
          doctest::skip(!solver_available())) {
  auto problem = load_corpus("productS");
  BuildOptions opts;
  ConditionBuild build = assemble(problem, opts);
  auto alpha = published_assignment(problem, build, published_solutions()[1]);
  SolverModel model;
  for (auto& [v, q] : alpha) model.values[v] = ModelValue{q, rational_to_string(q)};
  SolverConfig cfg;
  cfg.timeout_sec = 300;
  CHECK(recheck_model(build.system, model, cfg));
}

TEST_CASE("timeouts surface as unknown" * doctest::skip(!solver_available())) {
  Variable a = template_var("a");
  auto cs = tiny_system({Poly(a) - Poly(1)}, {a});
  SolverConfig cfg;
  cfg.command = "sleep 30";
  cfg.timeout_sec = 0.2;
  SolveOutcome out = solve(cs, cfg);
  CHECK(out.verdict == SolverVerdict::Unknown);
  CHECK(out.detail.find("timeout") != std::string::npos);
}

TEST_CASE("solver process failures are reported") {
  Variable a = template_var("a");
  auto cs = tiny_system({Poly(a)}, {a});
  SolverConfig cfg;
  cfg.command = "false";
  SolveOutcome out = solve(cs, cfg);
  CHECK(out.verdict == SolverVerdict::Error);
}
