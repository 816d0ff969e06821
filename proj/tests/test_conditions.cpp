#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "published.hpp"
#include "simplify.hpp"

using namespace lasso;
using namespace lasso::testutil;

namespace {

// Variables of the product family, for coefficient lookups.
const Variable X0 = program_var("x0");
const Variable Y0 = program_var("y0");
const Variable Y = program_var("y");
const Variable S = program_var("s");

Poly P(const Variable& v) { return Poly(v); }

// The coefficient polynomial of a given program monomial inside the
// constraint list, summed over matching equalities is not needed: each
// monomial appears in exactly one equality.
const Poly* find_constraint(const std::vector<Equality>& eqs, ConstraintTag tag,
                            const Poly& expected) {
  for (auto& e : eqs)
    if (e.prov.tag == tag && (e.poly == expected || e.poly == -expected)) return &e.poly;
  return nullptr;
}

size_t count_tag(const ConstraintSystem& cs, ConstraintTag tag) {
  size_t n = 0;
  for (auto& e : cs.equalities)
    if (e.prov.tag == tag) ++n;
  return n;
}

}  // namespace

TEST_CASE("coefficient_constraints splits by program monomials") {
  Variable a1 = template_var("a1"), a2 = template_var("a2"), a7 = template_var("a7");
  Poly p = (P(a1) + P(a2) + P(a7)) * P(Y) * P(Y);
  auto cs = coefficient_constraints(p, {X0, Y0, Y, S});
  REQUIRE(cs.size() == 1);
  CHECK(cs[0] == P(a1) + P(a2) + P(a7));
  CHECK(coefficient_constraints(Poly(), {X0, Y}).empty());
}

TEST_CASE("invariance condition of product: shape and the worked solution") {
  auto problem = load_corpus("product");
  ConditionBuild build = invariance_condition(problem.lasso, 2);

  // 15 template coefficients plus a degree-1 multiplier template
  CHECK(build.psi_spec.coefficient_count() == 15);
  REQUIRE(build.phis.size() == 1);
  CHECK(build.phis[0].spec.coefficient_count() == 5);
  CHECK(build.system.unknowns.size() == 20);
  CHECK(count_tag(build.system, ConstraintTag::Stem) == 6);

  // the published solution satisfies every equality
  PublishedSolution sol = published_solutions()[0];
  auto alpha = published_assignment(problem, build, sol);
  CHECK(satisfies(build.system, alpha));

  // flipping one value breaks it
  alpha[build.psi_spec.coeff_vars[0]] = 7;
  CHECK(!satisfies(build.system, alpha));
}

TEST_CASE("stem part of product matches the displayed equation") {
  auto problem = load_corpus("product");
  ConditionBuild build = invariance_condition(problem.lasso, 2);
  const TemplateSpec& spec = build.psi_spec;
  auto a = [&](const Monomial& m) { return P(coeff_for(spec, m)); };

  // coefficients of x0^2, y^2, x0 y, x0, y, 1 after substituting the stem
  CHECK(find_constraint(build.system.equalities, ConstraintTag::Stem,
                        a(Monomial(X0, 2))));
  CHECK(find_constraint(
      build.system.equalities, ConstraintTag::Stem,
      a(Monomial(Y0, 2)) + a(Monomial(Y, 2)) + a(Monomial(Y0) * Monomial(Y))));
  CHECK(find_constraint(
      build.system.equalities, ConstraintTag::Stem,
      a(Monomial(X0) * Monomial(Y0)) + a(Monomial(X0) * Monomial(Y))));
  CHECK(find_constraint(build.system.equalities, ConstraintTag::Stem, a(Monomial(X0))));
  CHECK(find_constraint(build.system.equalities, ConstraintTag::Stem,
                        a(Monomial(Y0)) + a(Monomial(Y))));
  CHECK(find_constraint(build.system.equalities, ConstraintTag::Stem,
                        a(Monomial::one())));
}

TEST_CASE("exit-scaled multiplier reproduces the paper presentation: 21 equations") {
  auto problem = load_corpus("product");
  PhiSpec phi;
  phi.mode = PhiSpec::Mode::ExitScaled;
  ConditionBuild build = invariance_condition(problem.lasso, 2, phi);

  REQUIRE(build.phis.size() == 1);
  CHECK(build.phis[0].spec.coefficient_count() == 1);  // Phi = b * y
  CHECK(build.system.equalities.size() == 21);
  CHECK(count_tag(build.system, ConstraintTag::Stem) == 6);
  CHECK(count_tag(build.system, ConstraintTag::Consecution) == 15);

  const TemplateSpec& spec = build.psi_spec;
  auto a = [&](const Monomial& m) { return P(coeff_for(spec, m)); };
  Poly b = P(build.phis[0].spec.coeff_vars[0]);

  // spot-check rows of the displayed consecution equation
  auto& eqs = build.system.equalities;
  // x0^2 y:  a(x0^2) + a(s^2) + a(x0 s) - b a(x0^2)
  CHECK(find_constraint(eqs, ConstraintTag::Consecution,
                        a(Monomial(X0, 2)) + a(Monomial(S, 2)) +
                            a(Monomial(X0) * Monomial(S)) - b * a(Monomial(X0, 2))));
  // y^3:  a(y^2) - b a(y^2)
  CHECK(find_constraint(eqs, ConstraintTag::Consecution,
                        a(Monomial(Y, 2)) - b * a(Monomial(Y, 2))));
  // x0 y:  a(x0) + a(s) - a(y s) - a(x0 y) - b a(x0)
  CHECK(find_constraint(eqs, ConstraintTag::Consecution,
                        a(Monomial(X0)) + a(Monomial(S)) - a(Monomial(Y) * Monomial(S)) -
                            a(Monomial(X0) * Monomial(Y)) - b * a(Monomial(X0))));
  // y^2:  a(y) - 2 a(y^2) - b a(y)
  CHECK(find_constraint(eqs, ConstraintTag::Consecution,
                        a(Monomial(Y)) - Poly(2) * a(Monomial(Y, 2)) - b * a(Monomial(Y))));
  // y:  a(1) + a(y^2) - a(y) - b a(1); the constant of the substituted
  // template also picks up the y^2 and y coefficients through (y - 1)^2
  // and (y - 1)
  CHECK(find_constraint(eqs, ConstraintTag::Consecution,
                        a(Monomial::one()) + a(Monomial(Y, 2)) - a(Monomial(Y)) -
                            b * a(Monomial::one())));

  // the worked solution satisfies this presentation too (b = 1)
  PublishedSolution sol = published_solutions()[0];
  std::map<Variable, Rational> alpha;
  Poly psi = parse_poly(sol.psi, problem);
  for (auto& [var, q] : assign_template(build.psi_spec, psi)) alpha[var] = q;
  alpha[build.phis[0].spec.coeff_vars[0]] = 1;
  CHECK(satisfies(build.system, alpha));
}

TEST_CASE("unknown counts reproduce the reported constraint sizes") {
  auto count = [](const std::string& name, int degree) {
    auto problem = load_corpus(name);
    BuildOptions opts;
    opts.degree = degree;
    ConditionBuild build = assemble(problem, opts);
    return build.system.core_unknown_count;
  };
  CHECK(count("product", 2) == 20);
  CHECK(count("productS", 2) == 25);
  CHECK(count("productSY", 2) == 27);
  CHECK(count("gcd_lcm", 2) == 42);
  CHECK(count("gcd_lcmS", 2) == 52);
  CHECK(count("div_mod", 2) == 16);
  CHECK(count("root2", 2) == 25);
  CHECK(count("root2S", 2) == 34);
  CHECK(count("squareS", 2) == 20);
  CHECK(count("cubeS", 3) == 54);
}

TEST_CASE("every published solution satisfies its assembled system") {
  for (auto& sol : published_solutions()) {
    auto problem = load_corpus(sol.name);
    BuildOptions opts;
    opts.degree = sol.name == "product2" || sol.name == "product2S" ? 3 : 2;
    opts.goal = problem.parametric() ? Goal::Synthesis : Goal::InvariantSearch;
    ConditionBuild build = assemble(problem, opts);
    auto alpha = published_assignment(problem, build, sol);
    CHECK_MESSAGE(satisfies(build.system, alpha), "published solution rejected for ",
                  sol.name);
  }
}

TEST_CASE("test-case constraints reproduce the worked synthesis example") {
  // productSY in the naming of the worked example: y' = c6 y + c7,
  // s' = c1 x0 + c2 y0 + c3 y + c4 s + c5, with the test case from the
  // running example.
  auto problem = parse_problem(R"(
problem productSY_ex
vars x0 y0 y s
params c1 c2 c3 c4 c5 c6 c7
stem: s = 0, y = y0
transition tau: s' = c1*x0 + c2*y0 + c3*y + c4*s + c5, y' = c6*y + c7
exit: y = 0
post: s = x0*y0
testcase: init {x0:3, y0:1, y:1, s:0} final {x0:3, y0:1, y:0, s:3} path tau
)");
  TestCaseConstraints tcc = testcase_constraints(problem, problem.testcases[0], 0);
  CHECK(tcc.state_vars.empty());  // single step: no intermediate states

  auto c = [&](const char* name) { return P(synthesis_var(name)); };
  // 0 = 1*c6 + c7   and   3 = 3*c1 + 1*c2 + 1*c3 + 0*c4 + c5
  bool found_y = false, found_s = false;
  for (auto& e : tcc.equalities) {
    if (e.poly == c("c6") + c("c7") || e.poly == -(c("c6") + c("c7"))) found_y = true;
    Poly s_eq = Poly(3) * c("c1") + c("c2") + c("c3") + c("c5") - Poly(3);
    if (e.poly == s_eq || e.poly == -s_eq) found_s = true;
  }
  CHECK(found_y);
  CHECK(found_s);

  // stem at the initial state is trivially satisfied: both generators
  // evaluate to constants zero and are emitted as 0 = 0
  size_t stem_eqs = 0;
  for (auto& e : tcc.equalities)
    if (e.prov.detail.find("stem") != std::string::npos) {
      ++stem_eqs;
      CHECK(e.poly.is_zero());
    }
  CHECK(stem_eqs == 2);

  // exit disequality at state 0: y evaluates to 1
  REQUIRE(tcc.disequalities.size() == 1);
  REQUIRE(tcc.disequalities[0].polys.size() == 1);
  CHECK(tcc.disequalities[0].polys[0] == Poly(1));
  // exit equality at the final state: 0 = 0
  bool exit_eq = false;
  for (auto& e : tcc.equalities)
    if (e.prov.detail.find("exit") != std::string::npos) {
      exit_eq = true;
      CHECK(e.poly.is_zero());
    }
  CHECK(exit_eq);
}

TEST_CASE("two-step test cases introduce one intermediate state") {
  auto problem = load_corpus("div_modS");
  // test case 1: div_modS(5, 2) == (2, 1) with two iterations
  TestCaseConstraints tcc = testcase_constraints(problem, problem.testcases[1], 1);
  CHECK(tcc.state_vars.size() == 4);
  size_t updates = 0;
  for (auto& e : tcc.equalities)
    if (e.prov.detail.find("step") != std::string::npos) ++updates;
  CHECK(updates == 8);
}

TEST_CASE("empty exit skips the exit constraints with a warning") {
  auto problem = load_corpus("div_modS");
  BuildOptions opts;
  ConditionBuild build = assemble(problem, opts);
  CHECK(build.system.disequalities.size() == 1);  // only the nontriviality group
  bool warned = false;
  for (auto& w : build.system.warnings)
    if (w.find("exit") != std::string::npos) warned = true;
  CHECK(warned);
  // five test cases contributed constraints
  CHECK(count_tag(build.system, ConstraintTag::TestCase) > 0);
}

TEST_CASE("nontriviality handling") {
  auto product = load_corpus("product");
  BuildOptions opts;
  opts.goal = Goal::InvariantSearch;
  ConditionBuild build = assemble(product, opts);
  REQUIRE(!build.system.disequalities.empty());
  const DisequalityGroup& group = build.system.disequalities.back();
  CHECK(group.prov.tag == ConstraintTag::Nontriviality);
  CHECK(group.polys.size() == 15);

  // the all-zero assignment is rejected
  std::map<Variable, Rational> zero;
  for (auto& v : build.system.unknowns) zero[v] = 0;
  CHECK(!satisfies(build.system, zero));

  // synthesis with a nonempty post omits the disjunction
  auto productS = load_corpus("productS");
  BuildOptions sopts;
  sopts.goal = Goal::Synthesis;
  ConditionBuild sbuild = assemble(productS, sopts);
  for (auto& d : sbuild.system.disequalities)
    CHECK(d.prov.tag != ConstraintTag::Nontriviality);

  // ... unless forced back on
  sopts.nontrivial_override = true;
  ConditionBuild forced = assemble(productS, sopts);
  CHECK(!forced.system.disequalities.empty());
}

TEST_CASE("no program variable survives into any constraint") {
  for (auto name : {"product", "productS", "productSY", "product2", "gcd_lcm", "div_modS",
                    "root2S", "squareS", "cubeS"}) {
    auto problem = load_corpus(name);
    BuildOptions opts;
    opts.degree = std::string(name) == "product2" || std::string(name) == "cubeS" ? 3 : 2;
    ConditionBuild build = assemble(problem, opts);
    auto is_program = [](const Variable& v) { return v.kind == VarKind::Program; };
    for (auto& e : build.system.equalities) CHECK(!e.poly.has_var(is_program));
    for (auto& d : build.system.disequalities)
      for (auto& p : d.polys) CHECK(!p.has_var(is_program));
  }
}

TEST_CASE("the verification-with-post reduction of the running example") {
  // (s - x0 y0) - 1 * (s + x0 y - x0 y0) = -x0 y reduces to zero modulo the
  // exit ideal <y>.
  auto problem = load_corpus("product");
  MonomialOrder ord = problem.lasso.default_order();
  GroebnerBasis exit_gb = buchberger(problem.lasso.exit.generators, ord);
  Poly post = problem.post.generators[0];
  Poly psi = parse_poly("s + x0*y - x0*y0", problem);
  CHECK(normal_form(post - psi, exit_gb).is_zero());
}

TEST_CASE("residual primed variables are reported") {
  // A relational transition that cannot eliminate x' by division: x'^2 = x.
  auto problem = parse_problem(
      "problem p\nvars x\nstem: x = 1\ntransition t: rel x'*x' - x = 0\nexit: x = 0\n");
  CHECK_THROWS_AS(invariance_condition(problem.lasso, 2), ResidualPrimedVariable);
}

TEST_CASE("linear simplification preserves published models") {
  for (auto name : {"productS", "productSY", "div_modS"}) {
    auto problem = load_corpus(name);
    BuildOptions opts;
    ConditionBuild build = assemble(problem, opts);
    SimplifyResult simplified = simplify_linear(build.system);
    CHECK(!simplified.unsat);
    CHECK(simplified.system.unknowns.size() < build.system.unknowns.size());

    const PublishedSolution* sol = nullptr;
    for (auto& s : published_solutions())
      if (s.name == name) sol = &s;
    REQUIRE(sol);
    auto alpha = published_assignment(problem, build, *sol);
    // restrict to the surviving unknowns, then rebuild the eliminated ones
    std::map<Variable, Rational> reduced;
    for (auto& v : simplified.system.unknowns) reduced[v] = alpha.at(v);
    CHECK(satisfies(simplified.system, reduced));
    auto extended = extend_model(reduced, simplified.bindings);
    CHECK(satisfies(build.system, extended));
    for (auto& [v, q] : extended) CHECK(alpha.at(v) == q);
  }
}

TEST_CASE("simplification detects ground contradictions") {
  ConstraintSystem cs;
  Variable a = template_var("a0");
  cs.unknowns = {a};
  cs.equalities.push_back({Poly(a), {ConstraintTag::Stem, ""}});
  cs.equalities.push_back({Poly(a) - Poly(1), {ConstraintTag::Stem, ""}});
  SimplifyResult res = simplify_linear(cs);
  CHECK(res.unsat);
}

TEST_CASE("omega templates add post multiplier unknowns") {
  auto problem = load_corpus("productS");
  OmegaSpec omega;
  omega.mode = OmegaSpec::Mode::Template;
  omega.degree = 1;
  ConditionBuild build = synthesis_condition(problem, 2, {}, omega);
  REQUIRE(build.omegas.size() == 1);
  REQUIRE(build.omegas[0].spec);
  CHECK(build.omegas[0].spec->coefficient_count() == 5);
  // 15 A + 5 B + 5 C + 5 D
  CHECK(build.system.unknowns.size() == 30);
}
