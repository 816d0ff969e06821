// Randomized soundness property: whenever the solver finds a model of the
// invariance condition plus nontriviality, the instantiated template must
// pass the independent invariant check.  A smaller twin of the acceptance
// suite's full 200-lasso run.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "errors.hpp"
#include "doctest.h"

#include <iostream>

#include "published.hpp"
#include "simplify.hpp"
#include "smt.hpp"

using namespace lasso;
using lasso::testutil::Rng;

namespace {

bool solver_available() {
  try {
    resolve_solver_command(std::nullopt);
    return true;
  } catch (const SolverFailure&) {
    return false;
  }
}

struct RandomLassoStats {
  int sat = 0;
  int unsat = 0;
  int other = 0;
  int algebraic = 0;
};

LassoProgram random_lasso(Rng& rng) {
  LassoProgram L;
  int nvars = rng.uniform(2, 3);
  for (int i = 0; i < nvars; ++i) L.vars.push_back(program_var("v" + std::to_string(i)));

  // Solved-form stem: each variable is either pinned or free.
  bool any = false;
  for (auto& v : L.vars) {
    if (rng.uniform(0, 2) == 0 && !(!any && v == L.vars.back())) continue;
    L.stem.generators.push_back(Poly(v) - Poly(Rational(rng.uniform(-2, 2))));
    any = true;
  }

  int ntrans = rng.uniform(1, 2);
  for (int t = 0; t < ntrans; ++t) {
    Transition tr;
    tr.name = "t" + std::to_string(t);
    for (auto& v : L.vars) {
      Poly rhs(Rational(rng.uniform(-2, 2)));
      for (auto& w : L.vars)
        rhs += Poly(Rational(rng.uniform(-1, 1))) * Poly(w);
      tr.assertion.generators.push_back(Poly(v.prime()) - rhs);
    }
    tr.det = classify_transition(tr.assertion, L.vars, L.exit, nullptr);
    L.transitions.push_back(std::move(tr));
  }

  // Single-generator exit.
  const Variable& target = L.vars[rng.uniform(0, nvars - 1)];
  L.exit.generators.push_back(Poly(target) - Poly(Rational(rng.uniform(-1, 1))));
  return L;
}

RandomLassoStats run_soundness_rounds(int rounds, uint64_t seed, int degree) {
  Rng rng(seed);
  SolverConfig cfg;
  cfg.timeout_sec = 60;
  RandomLassoStats stats;

  for (int round = 0; round < rounds; ++round) {
    LassoProgram L = random_lasso(rng);
    ConditionBuild build = invariance_condition(L, degree);
    build.system.disequalities.push_back(nontriviality_constraint(build.psi_spec));

    SimplifyResult simplified = simplify_linear(build.system);
    SolveOutcome out;
    if (simplified.unsat) {
      out.verdict = SolverVerdict::Unsat;
    } else {
      out = solve(simplified.system, cfg);
    }
    switch (out.verdict) {
      case SolverVerdict::Sat: {
        ++stats.sat;
        if (!out.model.all_rational()) {
          ++stats.algebraic;
          REQUIRE(recheck_model(simplified.system, out.model, cfg));
          break;
        }
        auto alpha = extend_model(out.model.rationals(), simplified.bindings);
        REQUIRE(satisfies(build.system, alpha));
        Poly instance = instantiate(build.psi, alpha);
        REQUIRE(!instance.is_zero());
        InvariantReport report = check_invariant(L, instance);
        REQUIRE_MESSAGE(report.ok(), "soundness violation on round ", round);
        break;
      }
      case SolverVerdict::Unsat:
        ++stats.unsat;
        break;
      default:
        ++stats.other;
        break;
    }
  }
  return stats;
}

}  // namespace

TEST_CASE("solver models instantiate to certified invariants" *
          doctest::skip(!solver_available())) {
  RandomLassoStats stats = run_soundness_rounds(40, 20240817, 2);
  std::cout << "random soundness: " << stats.sat << " sat, " << stats.unsat << " unsat, "
            << stats.other << " other, " << stats.algebraic << " algebraic models\n";
  CHECK(stats.sat + stats.unsat + stats.other == 40);
  CHECK(stats.other == 0);
  CHECK(stats.sat > 0);  // the family must actually exercise the sat path
}
