#include "program.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lasso {

const Transition* LassoProgram::find_transition(const std::string& name) const {
  for (auto& t : transitions)
    if (t.name == name) return &t;
  return nullptr;
}

namespace {

bool is_primed(const Variable& v) { return v.kind == VarKind::Program && v.primed; }

// True when q is a nonzero rational multiple of p.
bool rational_multiple(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return false;
  if (p.term_count() != q.term_count()) return false;
  auto it = p.terms().begin();
  Rational ratio = 0;
  for (auto& [m, c] : q.terms()) {
    if (!(it->first == m)) return false;
    Rational r = c / it->second;
    if (ratio == 0)
      ratio = r;
    else if (r != ratio)
      return false;
    ++it;
  }
  return ratio != 0;
}

}  // namespace

std::optional<DeterministicView> classify_transition(
    const AlgebraicAssertion& assertion, const std::vector<Variable>& vars,
    const AlgebraicAssertion& exit, std::vector<std::string>* warnings) {
  std::vector<Poly> guards;
  std::map<Variable, Update> updates;

  for (auto& g : assertion.generators) {
    std::vector<Variable> primed;
    for (auto& v : g.variables())
      if (is_primed(v)) primed.push_back(v);
    if (primed.empty()) {
      guards.push_back(g);
      continue;
    }
    if (primed.size() > 1) return std::nullopt;
    Variable x = primed[0];
    // Must be linear in x' with no x' inside products of primed variables.
    auto parts = g.coefficients_in(std::vector<Variable>{x});
    if (parts.size() > 2) return std::nullopt;
    Poly denom, rest;
    for (auto& [m, coefficient] : parts) {
      if (m.is_one())
        rest = coefficient;
      else if (m == Monomial(x, 1))
        denom = coefficient;
      else
        return std::nullopt;  // degree >= 2 in x'
    }
    if (denom.is_zero()) return std::nullopt;
    if (denom.has_var(is_primed) || rest.has_var(is_primed)) return std::nullopt;
    if (updates.count(x.base())) return std::nullopt;  // x' occurs twice
    updates[x.base()] = Update{x.base(), -rest, denom};
  }

  // Every program variable must be updated exactly once.
  if (updates.size() != vars.size()) return std::nullopt;
  for (auto& v : vars)
    if (!updates.count(v)) return std::nullopt;

  DeterministicView view;
  view.guards = guards;
  for (auto& v : vars) {
    Update u = updates[v];
    // Fold constant denominators into the numerator.
    if (u.denominator.is_constant()) {
      u.numerator = u.numerator / u.denominator.constant_value();
      u.denominator = Poly(1);
    } else {
      bool ok = exit.generators.size() == 1 &&
                rational_multiple(exit.generators[0], u.denominator);
      if (!ok && warnings)
        warnings->push_back("cannot establish that denominator '" + u.denominator.str() +
                            "' of update to '" + v.name +
                            "' is nonzero off the exit condition");
    }
    view.updates.push_back(std::move(u));
  }
  return view;
}

Rational evaluate(const Poly& p, const Valuation& v) {
  Rational sum = 0;
  for (auto& [m, c] : p.terms()) {
    Rational term = c;
    for (auto& [var, e] : m.exponents()) {
      auto it = v.find(var);
      if (it == v.end()) throw InputError("unbound variable in evaluation: " + var.str());
      for (int i = 0; i < e; ++i) term *= it->second;
    }
    sum += term;
  }
  return sum;
}

namespace {

bool satisfies(const AlgebraicAssertion& a, const Valuation& v) {
  for (auto& g : a.generators)
    if (evaluate(g, v) != 0) return false;
  return true;
}

}  // namespace

ExecutionResult execute(const LassoProgram& L, const Valuation& init,
                        const std::vector<std::string>& path) {
  for (auto& t : L.transitions)
    if (!t.assertion.parameter_free())
      throw InputError("cannot execute a parametric program");
  if (!L.stem.parameter_free() || !L.exit.parameter_free())
    throw InputError("cannot execute a parametric program");

  ExecutionResult res;
  Valuation state = init;
  for (auto& v : L.vars)
    if (!state.count(v)) throw InputError("initial state misses variable " + v.name);

  res.stem_ok = satisfies(L.stem, state);
  res.steps.push_back({state, satisfies(L.exit, state), true});

  for (size_t i = 0; i < path.size(); ++i) {
    const Transition* t = L.find_transition(path[i]);
    if (!t) throw InputError("unknown transition on path: " + path[i]);
    if (!t->det) throw InputError("transition '" + t->name + "' is not deterministic");

    for (auto& h : t->det->guards) {
      if (evaluate(h, state) != 0) {
        res.steps.back().guards_ok = false;
        throw ExecutionError("guard violated at step " + std::to_string(i + 1) +
                                 " (transition " + t->name + ")",
                             i + 1);
      }
    }
    Valuation next;
    for (auto& u : t->det->updates) {
      Rational den = evaluate(u.denominator, state);
      if (den == 0)
        throw ExecutionError("denominator of update to '" + u.target.name +
                                 "' is zero at step " + std::to_string(i + 1),
                             i + 1);
      next[u.target] = evaluate(u.numerator, state) / den;
    }
    state = next;
    res.steps.push_back({state, satisfies(L.exit, state), true});
  }

  res.valid_execution = res.stem_ok;
  for (size_t i = 0; i < res.steps.size(); ++i) {
    bool last = i + 1 == res.steps.size();
    if (res.steps[i].satisfies_exit != last) res.valid_execution = false;
  }
  return res;
}

}  // namespace lasso
