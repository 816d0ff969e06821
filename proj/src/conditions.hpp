#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "program.hpp"
#include "templates.hpp"

namespace lasso {

enum class ConstraintTag { Stem, Consecution, Post, TestCase, Nontriviality };

std::string tag_name(ConstraintTag tag);

struct Provenance {
  ConstraintTag tag;
  std::string detail;  // transition name, post index, "tc0 step1", ...
  std::string str() const { return detail.empty() ? tag_name(tag) : tag_name(tag) + "(" + detail + ")"; }
};

struct Equality {
  Poly poly;  // asserted = 0; over unknowns only
  Provenance prov;
};

// Asserts that at least one member polynomial is nonzero.
struct DisequalityGroup {
  std::vector<Poly> polys;
  Provenance prov;
};

struct ConstraintSystem {
  std::vector<Variable> unknowns;  // fixed order: A, B_tau..., C, D_i..., state vars
  size_t core_unknown_count = 0;   // everything but test-case state variables
  std::vector<Equality> equalities;
  std::vector<DisequalityGroup> disequalities;
  std::vector<std::string> warnings;
};

// How the consecution multiplier templates Phi_tau are shaped.
//   Generic:    Phi is a generic template of degree deg(r) - d (the default;
//               reproduces the published constraint sizes).
//   ExitScaled: Phi = s(V) * generic template of degree deg(r) - d - deg(s),
//               the presentation used for worked examples.
struct PhiSpec {
  enum class Mode { Generic, ExitScaled };
  Mode mode = Mode::Generic;
  std::optional<int> degree_override;
};

struct OmegaSpec {
  enum class Mode { One, Template };
  Mode mode = Mode::One;
  int degree = 0;
};

enum class Goal { Synthesis, InvariantSearch };

struct BuildOptions {
  int degree = 2;  // total degree of the invariant template Psi
  PhiSpec phi;
  OmegaSpec omega;
  Goal goal = Goal::Synthesis;
  std::optional<bool> nontrivial_override;  // force the disjunction on/off
};

// One equality per program-variable monomial of P: its coefficient
// polynomial over the unknowns.  Empty iff P is identically zero.
std::vector<Poly> coefficient_constraints(const Poly& P,
                                          const std::vector<Variable>& program_vars);

struct PhiInfo {
  std::string transition;
  TemplateSpec spec;
  Poly poly;        // the full multiplier Phi_tau (includes the exit factor
                    // in ExitScaled mode)
  Poly reduced;     // r_tau, the divided left-hand side
};

struct OmegaInfo {
  size_t post_index = 0;
  std::optional<TemplateSpec> spec;  // absent in mode One
  Poly poly;
};

// A constraint system together with the templates that went into it.
struct ConditionBuild {
  ConstraintSystem system;
  TemplateSpec psi_spec;
  Poly psi;
  std::vector<PhiInfo> phis;
  std::vector<OmegaInfo> omegas;
};

// The invariance condition of L for a degree-d template Psi:
//   stem part:        coefficients of  |_ Psi _|(stem)  = 0
//   per transition:   coefficients of  |_ q^d s Psi(V') _|(tau) - Phi Psi = 0
ConditionBuild invariance_condition(const LassoProgram& L, int degree,
                                    const PhiSpec& phi = {});

// Invariance condition plus, for every post generator,
//   coefficients of  |_ post_i - Omega_i Psi _|(exit) = 0.
ConditionBuild synthesis_condition(const SynthesisProblem& S, int degree,
                                   const PhiSpec& phi = {}, const OmegaSpec& omega = {});

// "Some coefficient of Psi is nonzero."
DisequalityGroup nontriviality_constraint(const TemplateSpec& psi_spec);

// Constraints pinning a test case: stem at the initial state, update
// equations along the path over fresh intermediate-state unknowns, the exit
// violated before the last state and satisfied at it.
struct TestCaseConstraints {
  std::vector<Variable> state_vars;
  std::vector<Equality> equalities;
  std::vector<DisequalityGroup> disequalities;
  std::vector<std::string> warnings;
};
TestCaseConstraints testcase_constraints(const SynthesisProblem& S, const TestCase& tc,
                                         size_t index);

// Full assembly: invariance/synthesis condition, test-case constraints for
// every declared test case, and the nontriviality disjunction where
// applicable (always in invariant search; in synthesis only when no post
// condition forces a nonzero template).
ConditionBuild assemble(const SynthesisProblem& S, const BuildOptions& opts);

// Exact model check: every equality vanishes and every disequality group
// has a nonzero member under the (total) assignment.
bool satisfies(const ConstraintSystem& cs, const std::map<Variable, Rational>& assignment);

std::string render_constraints(const ConstraintSystem& cs);

}  // namespace lasso
