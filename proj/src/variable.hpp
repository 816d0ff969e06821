#pragma once

#include <stdexcept>
#include <string>

namespace lasso {

enum class VarKind {
  Program,    // a program variable from the input problem (may be primed)
  Template,   // a generated template coefficient (A, B, D, test-case states)
  Synthesis,  // a user-declared synthesis parameter (C)
};

// Identity is (name, primed); the kind rides along for classification.
// Names are unique within a problem, so two variables with equal identity
// always agree on the kind.
struct Variable {
  std::string name;
  bool primed = false;
  VarKind kind = VarKind::Program;

  bool is_unknown() const { return kind != VarKind::Program; }

  Variable base() const { return Variable{name, false, kind}; }

  Variable prime() const {
    if (kind != VarKind::Program)
      throw std::logic_error("only program variables can be primed: " + name);
    return Variable{name, true, kind};
  }

  std::string str() const { return primed ? name + "'" : name; }

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.primed == b.primed;
  }
  friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
  // Structural order used for canonical storage, not for monomial comparison.
  friend bool operator<(const Variable& a, const Variable& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.primed < b.primed;
  }
};

inline Variable program_var(std::string name, bool primed = false) {
  return Variable{std::move(name), primed, VarKind::Program};
}
inline Variable template_var(std::string name) {
  return Variable{std::move(name), false, VarKind::Template};
}
inline Variable synthesis_var(std::string name) {
  return Variable{std::move(name), false, VarKind::Synthesis};
}

}  // namespace lasso
