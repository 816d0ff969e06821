#include "conditions.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace lasso {

std::string tag_name(ConstraintTag tag) {
  switch (tag) {
    case ConstraintTag::Stem: return "stem";
    case ConstraintTag::Consecution: return "consecution";
    case ConstraintTag::Post: return "post";
    case ConstraintTag::TestCase: return "testcase";
    case ConstraintTag::Nontriviality: return "nontriviality";
  }
  return "?";
}

namespace {

bool is_program_var(const Variable& v) { return v.kind == VarKind::Program; }
bool is_primed_var(const Variable& v) { return v.kind == VarKind::Program && v.primed; }

void assert_program_free(const Poly& p, const char* where) {
  if (p.has_var(is_program_var))
    throw Error(std::string("internal: program variable escaped into constraints (") + where +
                "): " + p.str());
}

void append_unknowns(std::vector<Variable>& unknowns, const std::vector<Variable>& more) {
  for (auto& v : more) unknowns.push_back(v);
}

}  // namespace

std::vector<Poly> coefficient_constraints(const Poly& P,
                                          const std::vector<Variable>& program_vars) {
  std::vector<Poly> out;
  for (auto& [monomial, coefficient] : P.coefficients_in(program_vars))
    out.push_back(coefficient);
  return out;
}

ConditionBuild invariance_condition(const LassoProgram& L, int degree, const PhiSpec& phi) {
  ConditionBuild build;
  MonomialOrder ord = L.default_order();

  auto tpl = generic_template(L.vars, degree, "a");
  build.psi_spec = tpl.spec;
  build.psi = tpl.poly;
  append_unknowns(build.system.unknowns, tpl.spec.coeff_vars);

  // Stem: the template must reduce to zero modulo the stem ideal.
  GroebnerBasis stem_gb = buchberger(L.stem.generators, ord);
  Poly stem_rem = normal_form(build.psi, stem_gb);
  for (auto& c : coefficient_constraints(stem_rem, L.vars)) {
    assert_program_free(c, "stem");
    build.system.equalities.push_back({c, {ConstraintTag::Stem, ""}});
  }

  // Consecution per transition.
  Poly exit_factor = L.exit_factor();
  int exit_deg = exit_factor.degree().value_or(0);
  Poly psi_primed = build.psi.primed();
  for (auto& t : L.transitions) {
    Poly q(1);
    if (t.det) {
      for (auto& u : t.det->updates)
        if (u.denominator != Poly(1)) q = q * u.denominator;
    }
    GroebnerBasis tau_gb = transition_basis(t, ord);
    Poly dividend = q.pow(degree) * exit_factor * psi_primed;
    Poly reduced = normal_form(dividend, tau_gb);
    if (reduced.has_var(is_primed_var))
      throw ResidualPrimedVariable("division by transition '" + t.name +
                                   "' left primed variables in the consecution remainder");

    int rdeg = reduced.degree_where(is_program_var).value_or(0);
    PhiInfo info;
    info.transition = t.name;
    info.reduced = reduced;
    std::string prefix = "b_" + t.name + "_";
    if (phi.mode == PhiSpec::Mode::ExitScaled) {
      int d = phi.degree_override.value_or(std::max(0, rdeg - degree - exit_deg));
      auto ptpl = generic_template(L.vars, d, prefix);
      info.spec = ptpl.spec;
      info.poly = exit_factor * ptpl.poly;
    } else {
      int d = phi.degree_override.value_or(std::max(0, rdeg - degree));
      auto ptpl = generic_template(L.vars, d, prefix);
      info.spec = ptpl.spec;
      info.poly = ptpl.poly;
    }
    append_unknowns(build.system.unknowns, info.spec.coeff_vars);

    Poly difference = reduced - info.poly * build.psi;
    for (auto& c : coefficient_constraints(difference, L.vars)) {
      assert_program_free(c, "consecution");
      build.system.equalities.push_back({c, {ConstraintTag::Consecution, t.name}});
    }
    build.phis.push_back(std::move(info));
  }

  build.system.core_unknown_count = build.system.unknowns.size();
  return build;
}

ConditionBuild synthesis_condition(const SynthesisProblem& S, int degree, const PhiSpec& phi,
                                   const OmegaSpec& omega) {
  ConditionBuild build = invariance_condition(S.lasso, degree, phi);
  MonomialOrder ord = S.lasso.default_order();

  // Synthesis parameters join the unknowns even when the post is empty:
  // they occur inside the stem/consecution constraints already built.
  append_unknowns(build.system.unknowns, S.synth_vars);

  if (!S.post.is_true()) {
    GroebnerBasis exit_gb = buchberger(S.lasso.exit.generators, ord);
    for (size_t i = 0; i < S.post.generators.size(); ++i) {
      OmegaInfo info;
      info.post_index = i;
      if (omega.mode == OmegaSpec::Mode::Template) {
        auto otpl = generic_template(S.lasso.vars, omega.degree, "d_" + std::to_string(i) + "_");
        info.spec = otpl.spec;
        info.poly = otpl.poly;
        append_unknowns(build.system.unknowns, otpl.spec.coeff_vars);
      } else {
        info.poly = Poly(1);
      }
      Poly reduced = normal_form(S.post.generators[i] - info.poly * build.psi, exit_gb);
      for (auto& c : coefficient_constraints(reduced, S.lasso.vars)) {
        assert_program_free(c, "post");
        build.system.equalities.push_back(
            {c, {ConstraintTag::Post, std::to_string(i)}});
      }
      build.omegas.push_back(std::move(info));
    }
  }

  build.system.core_unknown_count = build.system.unknowns.size();
  return build;
}

DisequalityGroup nontriviality_constraint(const TemplateSpec& psi_spec) {
  DisequalityGroup group;
  group.prov = {ConstraintTag::Nontriviality, ""};
  for (auto& a : psi_spec.coeff_vars) group.polys.push_back(Poly(a));
  return group;
}

TestCaseConstraints testcase_constraints(const SynthesisProblem& S, const TestCase& tc,
                                         size_t index) {
  TestCaseConstraints out;
  const LassoProgram& L = S.lasso;
  std::string label = "tc" + std::to_string(index);

  // State i as polynomials over fresh unknowns (or constants at the ends).
  size_t k = tc.path.size();
  std::vector<std::map<Variable, Poly>> states(k + 1);
  for (auto& v : L.vars) {
    states[0][v] = Poly(tc.init.at(v));
    states[k][v] = Poly(tc.final_state.at(v));
  }
  for (size_t i = 1; i < k; ++i) {
    for (auto& v : L.vars) {
      Variable w = template_var(label + "_s" + std::to_string(i) + "_" + v.name);
      out.state_vars.push_back(w);
      states[i][v] = Poly(w);
    }
  }

  // Stem holds at the initial state (constraints over the parameters when
  // the stem is parametric).
  for (auto& g : L.stem.generators) {
    Poly p = g.substitute(states[0]);
    assert_program_free(p, "testcase stem");
    out.equalities.push_back({p, {ConstraintTag::TestCase, label + " stem"}});
  }

  // Update (and guard) equations along the path.
  for (size_t i = 1; i <= k; ++i) {
    const Transition* t = L.find_transition(tc.path[i - 1]);
    if (!t) throw InputError("unknown transition in test case: " + tc.path[i - 1]);
    if (!t->det)
      throw InputError("test case path uses non-deterministic transition '" + t->name + "'");
    std::string step = label + " step" + std::to_string(i);
    for (auto& h : t->det->guards) {
      Poly p = h.substitute(states[i - 1]);
      assert_program_free(p, "testcase guard");
      out.equalities.push_back({p, {ConstraintTag::TestCase, step + " guard"}});
    }
    for (auto& u : t->det->updates) {
      Poly p = states[i].at(u.target) * u.denominator.substitute(states[i - 1]) -
               u.numerator.substitute(states[i - 1]);
      assert_program_free(p, "testcase update");
      out.equalities.push_back({p, {ConstraintTag::TestCase, step + " " + u.target.name}});
    }
  }

  // Exit is violated strictly before the end and satisfied at the end.
  if (L.exit.is_true()) {
    out.warnings.push_back("test case " + std::to_string(index) +
                           ": empty exit condition, exit constraints skipped");
  } else {
    for (size_t i = 0; i < k; ++i) {
      DisequalityGroup group;
      group.prov = {ConstraintTag::TestCase, label + " noexit" + std::to_string(i)};
      for (auto& g : L.exit.generators) {
        Poly p = g.substitute(states[i]);
        assert_program_free(p, "testcase exit");
        group.polys.push_back(p);
      }
      out.disequalities.push_back(std::move(group));
    }
    for (auto& g : L.exit.generators) {
      Poly p = g.substitute(states[k]);
      assert_program_free(p, "testcase exit");
      out.equalities.push_back({p, {ConstraintTag::TestCase, label + " exit"}});
    }
  }
  return out;
}

ConditionBuild assemble(const SynthesisProblem& S, const BuildOptions& opts) {
  ConditionBuild build = synthesis_condition(S, opts.degree, opts.phi, opts.omega);

  for (size_t i = 0; i < S.testcases.size(); ++i) {
    TestCaseConstraints tcc = testcase_constraints(S, S.testcases[i], i);
    append_unknowns(build.system.unknowns, tcc.state_vars);
    for (auto& e : tcc.equalities) build.system.equalities.push_back(e);
    for (auto& d : tcc.disequalities) build.system.disequalities.push_back(d);
    for (auto& w : tcc.warnings) build.system.warnings.push_back(w);
  }

  bool nontrivial = opts.goal == Goal::InvariantSearch || S.post.is_true();
  if (opts.nontrivial_override) nontrivial = *opts.nontrivial_override;
  if (nontrivial) build.system.disequalities.push_back(nontriviality_constraint(build.psi_spec));

  for (auto& w : S.warnings) build.system.warnings.push_back(w);
  return build;
}

bool satisfies(const ConstraintSystem& cs, const std::map<Variable, Rational>& assignment) {
  Valuation val(assignment.begin(), assignment.end());
  for (auto& e : cs.equalities)
    if (evaluate(e.poly, val) != 0) return false;
  for (auto& d : cs.disequalities) {
    bool some = false;
    for (auto& p : d.polys)
      if (evaluate(p, val) != 0) {
        some = true;
        break;
      }
    if (!some) return false;
  }
  return true;
}

std::string render_constraints(const ConstraintSystem& cs) {
  std::ostringstream out;
  for (auto& e : cs.equalities) out << e.prov.str() << ": " << e.poly.str() << " = 0\n";
  for (auto& d : cs.disequalities) {
    out << d.prov.str() << ": ";
    for (size_t i = 0; i < d.polys.size(); ++i) {
      if (i) out << " | ";
      out << d.polys[i].str() << " != 0";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace lasso
