#include "simplify.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lasso {

namespace {

// A polynomial is linear in the unknowns when every monomial is either 1 or
// a single unknown to the first power.
bool is_linear(const Poly& p) {
  for (auto& [m, c] : p.terms()) {
    if (m.is_one()) continue;
    if (m.total_degree() != 1) return false;
  }
  return true;
}

std::optional<std::pair<Variable, Rational>> pick_pivot(
    const Poly& p, const std::map<Variable, size_t>& rank) {
  std::optional<std::pair<Variable, Rational>> best;
  size_t best_rank = 0;
  for (auto& [m, c] : p.terms()) {
    if (m.is_one()) continue;
    const Variable& v = m.exponents().begin()->first;
    size_t r = rank.at(v);
    if (!best || r > best_rank) {
      best = {v, c};
      best_rank = r;
    }
  }
  return best;
}

}  // namespace

SimplifyResult simplify_linear(const ConstraintSystem& cs) {
  SimplifyResult res;
  res.system = cs;

  std::map<Variable, size_t> rank;
  for (size_t i = 0; i < cs.unknowns.size(); ++i) rank[cs.unknowns[i]] = i;

  auto substitute_everywhere = [&](const Variable& var, const Poly& expr) {
    std::map<Variable, Poly> binding{{var, expr}};
    for (auto& e : res.system.equalities) e.poly = e.poly.substitute(binding);
    for (auto& d : res.system.disequalities)
      for (auto& p : d.polys) p = p.substitute(binding);
    for (auto& b : res.bindings) b.expr = b.expr.substitute(binding);
  };

  bool progress = true;
  while (progress && !res.unsat) {
    progress = false;

    // Drop satisfied ground facts, detect contradictions.
    for (auto it = res.system.equalities.begin(); it != res.system.equalities.end();) {
      if (it->poly.is_zero()) {
        it = res.system.equalities.erase(it);
      } else if (it->poly.is_constant()) {
        res.unsat = true;
        break;
      } else {
        ++it;
      }
    }
    if (res.unsat) break;
    for (auto it = res.system.disequalities.begin();
         it != res.system.disequalities.end();) {
      bool trivially_true = false;
      for (auto& p : it->polys)
        if (p.is_constant() && !p.is_zero()) trivially_true = true;
      auto& polys = it->polys;
      polys.erase(std::remove_if(polys.begin(), polys.end(),
                                 [](const Poly& p) { return p.is_zero(); }),
                  polys.end());
      if (trivially_true) {
        it = res.system.disequalities.erase(it);
      } else if (polys.empty()) {
        res.unsat = true;
        break;
      } else {
        ++it;
      }
    }
    if (res.unsat) break;

    for (size_t i = 0; i < res.system.equalities.size(); ++i) {
      const Poly& p = res.system.equalities[i].poly;
      if (!is_linear(p)) continue;
      auto pivot = pick_pivot(p, rank);
      if (!pivot) continue;
      auto [var, coeff] = *pivot;
      Poly expr = (Poly(var) * coeff - p) / coeff;  // var = expr
      res.system.equalities.erase(res.system.equalities.begin() + i);
      substitute_everywhere(var, expr);
      res.bindings.push_back({var, expr});
      progress = true;
      break;
    }
  }

  if (!res.unsat) {
    std::vector<Variable> survivors;
    for (auto& v : cs.unknowns) {
      bool eliminated = false;
      for (auto& b : res.bindings)
        if (b.var == v) eliminated = true;
      if (!eliminated) survivors.push_back(v);
    }
    res.system.core_unknown_count = 0;  // not meaningful after elimination
    res.system.unknowns = std::move(survivors);
  }
  return res;
}

std::map<Variable, Rational> extend_model(const std::map<Variable, Rational>& reduced,
                                          const std::vector<Binding>& bindings) {
  std::map<Variable, Rational> full = reduced;
  Valuation val(reduced.begin(), reduced.end());
  for (auto& b : bindings) full[b.var] = evaluate(b.expr, val);
  return full;
}

}  // namespace lasso
