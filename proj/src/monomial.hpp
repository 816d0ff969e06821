#pragma once

#include <map>
#include <string>

#include "variable.hpp"

namespace lasso {

// Power product of variables.  Zero exponents are never stored, so the
// neutral element is the empty map and equality is structural.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Variable& v, int exp = 1) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    if (exp > 0) exps_[v] = exp;
  }

  static Monomial one() { return Monomial(); }

  bool is_one() const { return exps_.empty(); }

  const std::map<Variable, int>& exponents() const { return exps_; }

  int exponent(const Variable& v) const {
    auto it = exps_.find(v);
    return it == exps_.end() ? 0 : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (auto& [v, e] : exps_) d += e;
    return d;
  }

  template <class Pred>
  int degree_where(Pred pred) const {
    int d = 0;
    for (auto& [v, e] : exps_)
      if (pred(v)) d += e;
    return d;
  }

  template <class Pred>
  bool has_var(Pred pred) const {
    for (auto& [v, e] : exps_)
      if (pred(v)) return true;
    return false;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (auto& [v, e] : o.exps_) {
      auto [it, inserted] = r.exps_.emplace(v, e);
      if (!inserted) it->second += e;
    }
    return r;
  }

  // True when this monomial divides m.
  bool divides(const Monomial& m) const {
    for (auto& [v, e] : exps_)
      if (m.exponent(v) < e) return false;
    return true;
  }

  // Exact quotient; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial r = *this;
    for (auto& [v, e] : o.exps_) {
      auto it = r.exps_.find(v);
      if (it == r.exps_.end() || it->second < e)
        throw std::logic_error("monomial division is not exact");
      it->second -= e;
      if (it->second == 0) r.exps_.erase(it);
    }
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (auto& [v, e] : b.exps_) {
      auto [it, inserted] = r.exps_.emplace(v, e);
      if (!inserted && it->second < e) it->second = e;
    }
    return r;
  }

  // Keeps the factors selected by pred; the complement goes to the second slot.
  template <class Pred>
  std::pair<Monomial, Monomial> split(Pred pred) const {
    Monomial in, out;
    for (auto& [v, e] : exps_) (pred(v) ? in : out).exps_[v] = e;
    return {in, out};
  }

  std::string str() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  // Structural order for use as a map key; unrelated to monomial orderings.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  std::map<Variable, int> exps_;
};

}  // namespace lasso
