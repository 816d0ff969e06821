#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "errors.hpp"

namespace lasso {

namespace {

struct Token {
  enum Kind { Ident, PrimedIdent, Number, Punct, End } kind = End;
  std::string text;
  int line = 0;
  int col = 0;
};

class Tokens {
 public:
  Tokens(const std::string& text, int line) {
    int col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string s, int c) {
      toks_.push_back({k, std::move(s), line, c});
    };
    while (i < text.size()) {
      char ch = text[i];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        ++col;
        continue;
      }
      int startonto = col;
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string id;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
          id += text[i++];
          ++col;
        }
        if (i < text.size() && text[i] == '\'') {
          ++i;
          ++col;
          push(Token::PrimedIdent, id, startonto);
        } else {
          push(Token::Ident, id, startonto);
        }
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string num;
        bool seen_dot = false;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) ||
                                   (text[i] == '.' && !seen_dot))) {
          if (text[i] == '.') seen_dot = true;
          num += text[i++];
          ++col;
        }
        push(Token::Number, num, startonto);
        continue;
      }
      push(Token::Punct, std::string(1, ch), startonto);
      ++i;
      ++col;
    }
    end_ = {Token::End, "", line, col};
  }

  const Token& peek(size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : end_;
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return pos_ >= toks_.size(); }
  bool accept_punct(const std::string& p) {
    if (peek().kind == Token::Punct && peek().text == p) {
      next();
      return true;
    }
    return false;
  }
  Token expect_punct(const std::string& p) {
    if (peek().kind != Token::Punct || peek().text != p)
      throw ParseError("expected '" + p + "'", peek().line, peek().col);
    return next();
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Token::Ident)
      throw ParseError("expected " + what, peek().line, peek().col);
    return next();
  }

 private:
  std::vector<Token> toks_;
  Token end_;
  size_t pos_ = 0;
};

// Rational function value used while evaluating expressions.  Denominators
// stay around symbolically; equation and update builders decide what to do
// with them.
struct RF {
  Poly num;
  Poly den{1};
};

struct Env {
  std::map<std::string, Variable> names;
  bool allow_primed = false;
  bool allow_old = false;
};

class ExprParser {
 public:
  ExprParser(Tokens& toks, const Env& env) : toks_(toks), env_(env) {}

  RF parse() { return expr(); }

 private:
  RF expr() {
    RF acc = term();
    while (true) {
      if (toks_.accept_punct("+")) {
        RF r = term();
        acc = add(acc, r, false);
      } else if (toks_.accept_punct("-")) {
        RF r = term();
        acc = add(acc, r, true);
      } else {
        return acc;
      }
    }
  }

  RF term() {
    RF acc = factor();
    while (true) {
      if (toks_.accept_punct("*")) {
        RF r = factor();
        acc = RF{acc.num * r.num, acc.den * r.den};
      } else if (toks_.accept_punct("/")) {
        const Token& at = toks_.peek();
        RF r = factor();
        if (r.num.is_zero()) throw ParseError("division by zero", at.line, at.col);
        acc = RF{acc.num * r.den, acc.den * r.num};
      } else {
        return acc;
      }
    }
  }

  RF factor() {
    bool negate = false;
    while (true) {
      if (toks_.accept_punct("-"))
        negate = !negate;
      else if (toks_.accept_punct("+"))
        ;
      else
        break;
    }
    RF v = atom();
    if (toks_.accept_punct("^")) {
      const Token& t = toks_.peek();
      if (t.kind != Token::Number || t.text.find('.') != std::string::npos)
        throw ParseError("expected integer exponent", t.line, t.col);
      int k = std::stoi(toks_.next().text);
      v = RF{v.num.pow(k), v.den.pow(k)};
    }
    if (negate) v.num = -v.num;
    return v;
  }

  RF atom() {
    Token t = toks_.next();
    switch (t.kind) {
      case Token::Number:
        return RF{Poly(rational_from_string(t.text))};
      case Token::Ident: {
        if (t.text == "old") {
          if (!env_.allow_old)
            throw ParseError("old(...) is only allowed in transitions", t.line, t.col);
          toks_.expect_punct("(");
          Token v = toks_.next();
          if (v.kind != Token::Ident)
            throw ParseError("expected variable inside old(...)", v.line, v.col);
          toks_.expect_punct(")");
          return RF{Poly(resolve(v, false))};
        }
        return RF{Poly(resolve(t, false))};
      }
      case Token::PrimedIdent: {
        if (!env_.allow_primed)
          throw ParseError("primed variable outside a transition: " + t.text + "'", t.line,
                           t.col);
        return RF{Poly(resolve(t, true))};
      }
      case Token::Punct:
        if (t.text == "(") {
          RF v = expr();
          toks_.expect_punct(")");
          return v;
        }
        [[fallthrough]];
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  RF add(const RF& a, const RF& b, bool subtract) {
    Poly bn = subtract ? -b.num : b.num;
    if (a.den == b.den) return RF{a.num + bn, a.den};
    return RF{a.num * b.den + bn * a.den, a.den * b.den};
  }

  Variable resolve(const Token& t, bool primed) {
    auto it = env_.names.find(t.text);
    if (it == env_.names.end())
      throw ParseError("undeclared variable '" + t.text + "'", t.line, t.col);
    if (primed) {
      if (it->second.kind != VarKind::Program)
        throw ParseError("only program variables can be primed: " + t.text, t.line, t.col);
      return it->second.prime();
    }
    return it->second;
  }

  Tokens& toks_;
  const Env& env_;
};

// poly = poly; the generator is the numerator of the difference (the
// denominators are nonzero wherever the assertion is interpreted).
Poly parse_equation(Tokens& toks, const Env& env) {
  ExprParser lhs(toks, env);
  RF l = lhs.parse();
  toks.expect_punct("=");
  ExprParser rhs(toks, env);
  RF r = rhs.parse();
  if (l.den == r.den) return l.num - r.num;
  return l.num * r.den - r.num * l.den;
}

std::vector<Poly> parse_equation_list(Tokens& toks, const Env& env) {
  std::vector<Poly> out;
  out.push_back(parse_equation(toks, env));
  while (toks.accept_punct(",")) out.push_back(parse_equation(toks, env));
  if (!toks.at_end()) {
    const Token& t = toks.peek();
    throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
  }
  return out;
}

Rational parse_value(Tokens& toks) {
  bool neg = toks.accept_punct("-");
  const Token& t = toks.peek();
  if (t.kind != Token::Number) throw ParseError("expected a rational value", t.line, t.col);
  Rational v = rational_from_string(toks.next().text);
  if (toks.accept_punct("/")) {
    const Token& d = toks.peek();
    if (d.kind != Token::Number) throw ParseError("expected a denominator", d.line, d.col);
    Rational den = rational_from_string(toks.next().text);
    if (den == 0) throw ParseError("zero denominator", d.line, d.col);
    v /= den;
  }
  return neg ? Rational(-v) : v;
}

Valuation parse_valuation_braces(Tokens& toks, const std::map<std::string, Variable>& names) {
  Valuation val;
  toks.expect_punct("{");
  if (!toks.accept_punct("}")) {
    while (true) {
      Token v = toks.expect_ident("a variable name");
      auto it = names.find(v.text);
      if (it == names.end() || it->second.kind != VarKind::Program)
        throw ParseError("unknown program variable '" + v.text + "'", v.line, v.col);
      toks.expect_punct(":");
      val[it->second] = parse_value(toks);
      if (toks.accept_punct("}")) break;
      toks.expect_punct(",");
    }
  }
  return val;
}

struct TransitionItems {
  std::vector<std::pair<Variable, RF>> updates;  // target (unprimed base), rhs
  std::vector<Poly> guards;
  std::vector<Poly> rels;
};

TransitionItems parse_transition_items(Tokens& toks, const Env& env) {
  TransitionItems items;
  while (true) {
    const Token& t = toks.peek();
    if (t.kind == Token::Ident && t.text == "guard") {
      toks.next();
      Env genv = env;
      genv.allow_primed = false;
      items.guards.push_back(parse_equation(toks, genv));
    } else if (t.kind == Token::Ident && t.text == "rel") {
      toks.next();
      items.rels.push_back(parse_equation(toks, env));
    } else if (t.kind == Token::PrimedIdent) {
      Token target = toks.next();
      auto it = env.names.find(target.text);
      if (it == env.names.end() || it->second.kind != VarKind::Program)
        throw ParseError("unknown program variable '" + target.text + "'", target.line,
                         target.col);
      toks.expect_punct("=");
      Env renv = env;
      renv.allow_primed = false;  // right-hand sides read the pre-state
      ExprParser rhs(toks, renv);
      items.updates.emplace_back(it->second, rhs.parse());
    } else {
      throw ParseError("expected an update, guard or rel item", t.line, t.col);
    }
    if (toks.at_end()) break;
    toks.expect_punct(",");
  }
  return items;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

SynthesisProblem parse_problem(const std::string& text) {
  SynthesisProblem problem;
  Env env;
  env.allow_old = false;

  bool seen_problem = false, seen_vars = false, seen_params = false;
  bool seen_stem = false, seen_exit = false, seen_post = false;

  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(strip_comment(line));
  }

  auto require_vars = [&](const Token& t) {
    if (!seen_vars) throw ParseError("'vars' must appear first", t.line, t.col);
  };

  for (int lineno = 1; lineno <= static_cast<int>(lines.size()); ++lineno) {
    Tokens toks(lines[lineno - 1], lineno);
    if (toks.at_end()) continue;
    Token head = toks.next();
    if (head.kind != Token::Ident)
      throw ParseError("expected a directive", head.line, head.col);

    if (head.text == "problem") {
      if (seen_problem) throw ParseError("duplicate 'problem'", head.line, head.col);
      seen_problem = true;
      problem.name = toks.expect_ident("a problem name").text;
    } else if (head.text == "vars") {
      if (seen_vars) throw ParseError("duplicate 'vars'", head.line, head.col);
      seen_vars = true;
      while (!toks.at_end()) {
        Token v = toks.expect_ident("a variable name");
        if (env.names.count(v.text))
          throw ParseError("duplicate name '" + v.text + "'", v.line, v.col);
        Variable var = program_var(v.text);
        env.names.emplace(v.text, var);
        problem.lasso.vars.push_back(var);
      }
      if (problem.lasso.vars.empty())
        throw ParseError("'vars' needs at least one variable", head.line, head.col);
    } else if (head.text == "params") {
      if (seen_params) throw ParseError("duplicate 'params'", head.line, head.col);
      seen_params = true;
      while (!toks.at_end()) {
        Token v = toks.expect_ident("a parameter name");
        if (env.names.count(v.text))
          throw ParseError("duplicate name '" + v.text + "'", v.line, v.col);
        Variable var = synthesis_var(v.text);
        env.names.emplace(v.text, var);
        problem.synth_vars.push_back(var);
      }
    } else if (head.text == "stem") {
      require_vars(head);
      if (seen_stem) throw ParseError("duplicate 'stem'", head.line, head.col);
      seen_stem = true;
      toks.expect_punct(":");
      problem.lasso.stem.generators = parse_equation_list(toks, env);
    } else if (head.text == "transition") {
      require_vars(head);
      Token name = toks.expect_ident("a transition name");
      if (problem.lasso.find_transition(name.text))
        throw ParseError("duplicate transition '" + name.text + "'", name.line, name.col);
      toks.expect_punct(":");
      Env tenv = env;
      tenv.allow_primed = true;
      tenv.allow_old = true;
      TransitionItems items = parse_transition_items(toks, tenv);

      Transition t;
      t.name = name.text;
      std::vector<Variable> mentioned;
      for (auto& [target, rhs] : items.updates) {
        if (std::find(mentioned.begin(), mentioned.end(), target) != mentioned.end())
          throw ParseError("duplicate update target '" + target.name + "'", name.line,
                           name.col);
        mentioned.push_back(target);
        t.assertion.generators.push_back(Poly(target.prime()) * rhs.den - rhs.num);
      }
      for (auto& h : items.guards) t.assertion.generators.push_back(h);
      for (auto& r : items.rels) {
        t.assertion.generators.push_back(r);
        for (auto& v : r.variables())
          if (v.kind == VarKind::Program && v.primed) mentioned.push_back(v.base());
      }
      // Untouched variables keep their values, unless the transition is a
      // raw relational assertion.
      if (items.rels.empty() || !items.updates.empty() || !items.guards.empty()) {
        for (auto& v : problem.lasso.vars)
          if (std::find(mentioned.begin(), mentioned.end(), v) == mentioned.end())
            t.assertion.generators.push_back(Poly(v.prime()) - Poly(v));
      }
      problem.lasso.transitions.push_back(std::move(t));
    } else if (head.text == "exit") {
      require_vars(head);
      if (seen_exit) throw ParseError("duplicate 'exit'", head.line, head.col);
      seen_exit = true;
      toks.expect_punct(":");
      problem.lasso.exit.generators = parse_equation_list(toks, env);
    } else if (head.text == "post") {
      require_vars(head);
      if (seen_post) throw ParseError("duplicate 'post'", head.line, head.col);
      seen_post = true;
      toks.expect_punct(":");
      problem.post.generators = parse_equation_list(toks, env);
    } else if (head.text == "testcase") {
      require_vars(head);
      toks.expect_punct(":");
      TestCase tc;
      Token kw = toks.expect_ident("'init'");
      if (kw.text != "init") throw ParseError("expected 'init'", kw.line, kw.col);
      tc.init = parse_valuation_braces(toks, env.names);
      kw = toks.expect_ident("'final'");
      if (kw.text != "final") throw ParseError("expected 'final'", kw.line, kw.col);
      tc.final_state = parse_valuation_braces(toks, env.names);
      kw = toks.expect_ident("'path'");
      if (kw.text != "path") throw ParseError("expected 'path'", kw.line, kw.col);
      while (!toks.at_end()) tc.path.push_back(toks.expect_ident("a transition name").text);
      if (tc.path.empty())
        throw ParseError("a test case needs a nonempty path", kw.line, kw.col);
      for (auto& v : problem.lasso.vars) {
        if (!tc.init.count(v))
          throw ParseError("test case init misses variable '" + v.name + "'", head.line,
                           head.col);
        if (!tc.final_state.count(v))
          throw ParseError("test case final misses variable '" + v.name + "'", head.line,
                           head.col);
      }
      problem.testcases.push_back(std::move(tc));
    } else {
      throw ParseError("unknown directive '" + head.text + "'", head.line, head.col);
    }
  }

  if (!seen_problem) throw ParseError("missing 'problem' header", 1, 1);
  if (!seen_vars) throw ParseError("missing 'vars'", 1, 1);
  if (!seen_stem) throw ParseError("missing 'stem'", 1, 1);
  if (problem.lasso.transitions.empty())
    throw ParseError("a lasso program needs at least one transition", 1, 1);

  // Resolve deterministic views and denominator warnings.
  for (auto& t : problem.lasso.transitions)
    t.det = classify_transition(t.assertion, problem.lasso.vars, problem.lasso.exit,
                                &problem.warnings);

  // Late checks on test cases.
  for (size_t i = 0; i < problem.testcases.size(); ++i) {
    auto& tc = problem.testcases[i];
    for (auto& step : tc.path)
      if (!problem.lasso.find_transition(step))
        throw ParseError("test case " + std::to_string(i) + " uses unknown transition '" +
                             step + "'",
                         1, 1);
    if (!problem.lasso.exit.is_true() && problem.lasso.exit.parameter_free()) {
      for (auto& g : problem.lasso.exit.generators)
        if (evaluate(g, tc.final_state) != 0)
          throw ParseError("final state of test case " + std::to_string(i) +
                               " does not satisfy the exit condition",
                           1, 1);
    }
  }
  return problem;
}

Poly parse_poly(const std::string& text, const SynthesisProblem& problem) {
  Env env;
  for (auto& v : problem.lasso.vars) env.names.emplace(v.name, v);
  for (auto& v : problem.synth_vars) env.names.emplace(v.name, v);
  Tokens toks(text, 1);
  ExprParser p(toks, env);
  RF value = p.parse();
  if (!toks.at_end()) {
    const Token& t = toks.peek();
    throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
  }
  if (!value.den.is_constant())
    throw ParseError("expected a polynomial, got a non-constant denominator", 1, 1);
  return value.num / value.den.constant_value();
}

Valuation parse_valuation(const std::string& text, const SynthesisProblem& problem) {
  std::map<std::string, Variable> names;
  for (auto& v : problem.lasso.vars) names.emplace(v.name, v);
  Tokens toks(text, 1);
  Valuation v = parse_valuation_braces(toks, names);
  if (!toks.at_end())
    throw ParseError("unexpected trailing input", toks.peek().line, toks.peek().col);
  return v;
}

namespace {

std::string render_assertion(const std::vector<Poly>& gens) {
  std::string out;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += gens[i].str() + " = 0";
  }
  return out;
}

std::string maybe_parenthesize(const Poly& p) {
  std::string s = p.str();
  return p.term_count() > 1 ? "(" + s + ")" : s;
}

}  // namespace

std::string render_problem(const SynthesisProblem& problem) {
  std::ostringstream out;
  out << "problem " << problem.name << "\n";
  out << "vars";
  for (auto& v : problem.lasso.vars) out << " " << v.name;
  out << "\n";
  if (!problem.synth_vars.empty()) {
    out << "params";
    for (auto& v : problem.synth_vars) out << " " << v.name;
    out << "\n";
  }
  out << "stem: " << render_assertion(problem.lasso.stem.generators) << "\n";
  for (auto& t : problem.lasso.transitions) {
    out << "transition " << t.name << ": ";
    bool first = true;
    auto sep = [&]() {
      if (!first) out << ", ";
      first = false;
    };
    if (t.det) {
      for (auto& u : t.det->updates) {
        sep();
        out << u.target.name << "' = ";
        if (u.denominator == Poly(1))
          out << u.numerator.str();
        else
          out << maybe_parenthesize(u.numerator) << " / "
              << maybe_parenthesize(u.denominator);
      }
      for (auto& h : t.det->guards) {
        sep();
        out << "guard " << h.str() << " = 0";
      }
    } else {
      for (auto& g : t.assertion.generators) {
        sep();
        out << "rel " << g.str() << " = 0";
      }
    }
    out << "\n";
  }
  if (!problem.lasso.exit.is_true())
    out << "exit: " << render_assertion(problem.lasso.exit.generators) << "\n";
  if (!problem.post.is_true())
    out << "post: " << render_assertion(problem.post.generators) << "\n";
  for (auto& tc : problem.testcases) {
    auto braces = [&](const Valuation& val) {
      std::string s = "{";
      bool first = true;
      for (auto& v : problem.lasso.vars) {
        if (!first) s += ", ";
        first = false;
        s += v.name + ":" + rational_to_string(val.at(v));
      }
      return s + "}";
    };
    out << "testcase: init " << braces(tc.init) << " final " << braces(tc.final_state)
        << " path";
    for (auto& p : tc.path) out << " " << p;
    out << "\n";
  }
  return out.str();
}

namespace {

bool same_generators(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) return false;
  std::vector<Poly> unmatched = b;
  for (auto& p : a) {
    auto it = std::find(unmatched.begin(), unmatched.end(), p);
    if (it == unmatched.end()) return false;
    unmatched.erase(it);
  }
  return true;
}

}  // namespace

bool structurally_equal(const SynthesisProblem& a, const SynthesisProblem& b) {
  if (a.name != b.name || a.lasso.vars != b.lasso.vars || a.synth_vars != b.synth_vars)
    return false;
  if (!same_generators(a.lasso.stem.generators, b.lasso.stem.generators)) return false;
  if (!same_generators(a.lasso.exit.generators, b.lasso.exit.generators)) return false;
  if (!same_generators(a.post.generators, b.post.generators)) return false;
  if (a.lasso.transitions.size() != b.lasso.transitions.size()) return false;
  for (size_t i = 0; i < a.lasso.transitions.size(); ++i) {
    auto& ta = a.lasso.transitions[i];
    auto& tb = b.lasso.transitions[i];
    if (ta.name != tb.name) return false;
    if (ta.det.has_value() != tb.det.has_value()) return false;
    if (ta.det) {
      if (!same_generators(ta.det->guards, tb.det->guards)) return false;
      if (ta.det->updates.size() != tb.det->updates.size()) return false;
      for (size_t j = 0; j < ta.det->updates.size(); ++j) {
        auto& ua = ta.det->updates[j];
        auto& ub = tb.det->updates[j];
        if (ua.target != ub.target || ua.numerator != ub.numerator ||
            ua.denominator != ub.denominator)
          return false;
      }
    } else if (!same_generators(ta.assertion.generators, tb.assertion.generators)) {
      return false;
    }
  }
  if (a.testcases.size() != b.testcases.size()) return false;
  for (size_t i = 0; i < a.testcases.size(); ++i) {
    if (a.testcases[i].init != b.testcases[i].init) return false;
    if (a.testcases[i].final_state != b.testcases[i].final_state) return false;
    if (a.testcases[i].path != b.testcases[i].path) return false;
  }
  return true;
}

}  // namespace lasso
