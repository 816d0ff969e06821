#include "smt.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "errors.hpp"

#ifndef POLYLASSO_Z3_WASM_WRAPPER
#define POLYLASSO_Z3_WASM_WRAPPER ""
#endif

namespace lasso {

std::map<Variable, Rational> SolverModel::rationals() const {
  std::map<Variable, Rational> out;
  for (auto& [v, mv] : values) {
    if (!mv.is_rational()) throw SolverFailure("model value for " + v.name + " is not rational");
    out[v] = *mv.rational;
  }
  return out;
}

namespace {

std::string smt_rational(const Rational& q) {
  std::string num = q.get_num().get_str();
  std::string den = q.get_den().get_str();
  bool negative = !num.empty() && num[0] == '-';
  if (negative) num = num.substr(1);
  std::string core = den == "1" ? num : "(/ " + num + " " + den + ")";
  return negative ? "(- " + core + ")" : core;
}

std::string smt_term(const Poly& p, const std::map<Variable, size_t>& rank) {
  if (p.is_zero()) return "0";
  // Terms in a fixed order: by total degree, then by the unknown ranking.
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    int da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da < db;
    auto ia = a.first.exponents().begin(), ea = a.first.exponents().end();
    auto ib = b.first.exponents().begin(), eb = b.first.exponents().end();
    while (ia != ea && ib != eb) {
      size_t ra = rank.count(ia->first) ? rank.at(ia->first) : SIZE_MAX;
      size_t rb = rank.count(ib->first) ? rank.at(ib->first) : SIZE_MAX;
      if (ra != rb) return ra < rb;
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia;
      ++ib;
    }
    return (ia == ea) < (ib == eb);
  });

  std::vector<std::string> rendered;
  for (auto& [m, c] : terms) {
    std::vector<std::string> factors;
    if (c != 1 || m.is_one()) factors.push_back(smt_rational(c));
    for (auto& [v, e] : m.exponents())
      for (int i = 0; i < e; ++i) factors.push_back(v.name);
    if (factors.size() == 1)
      rendered.push_back(factors[0]);
    else {
      std::string s = "(*";
      for (auto& f : factors) s += " " + f;
      rendered.push_back(s + ")");
    }
  }
  if (rendered.size() == 1) return rendered[0];
  std::string s = "(+";
  for (auto& r : rendered) s += " " + r;
  return s + ")";
}

}  // namespace

std::string emit_smtlib(const ConstraintSystem& cs) {
  std::map<Variable, size_t> rank;
  for (size_t i = 0; i < cs.unknowns.size(); ++i) rank[cs.unknowns[i]] = i;

  auto check_covered = [&](const Poly& p) {
    for (auto& v : p.variables())
      if (!rank.count(v))
        throw Error("internal: constraint mentions undeclared unknown " + v.name);
  };

  std::ostringstream out;
  out << "(set-logic QF_NRA)\n";
  for (auto& v : cs.unknowns) out << "(declare-const " << v.name << " Real)\n";
  for (auto& e : cs.equalities) {
    check_covered(e.poly);
    out << "(assert (= " << smt_term(e.poly, rank) << " 0))\n";
  }
  for (auto& d : cs.disequalities) {
    for (auto& p : d.polys) check_covered(p);
    out << "(assert (or";
    for (auto& p : d.polys) out << " (not (= " << smt_term(p, rank) << " 0))";
    out << "))\n";
  }
  out << "(check-sat)\n";
  if (!cs.unknowns.empty()) out << "(get-model)\n";
  return out.str();
}

ProcessResult run_process(const std::string& command, const std::string& input,
                          double timeout_sec) {
  char dir_template[] = "/tmp/polylasso.XXXXXX";
  if (!mkdtemp(dir_template)) throw SolverFailure("cannot create temp directory");
  std::string dir = dir_template;
  std::string in_path = dir + "/in", out_path = dir + "/out", err_path = dir + "/err";
  {
    std::ofstream f(in_path);
    f << input;
  }

  pid_t pid = fork();
  if (pid < 0) throw SolverFailure("fork failed");
  if (pid == 0) {
    int in_fd = open(in_path.c_str(), O_RDONLY);
    int out_fd = open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    int err_fd = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (in_fd < 0 || out_fd < 0 || err_fd < 0) _exit(127);
    dup2(in_fd, 0);
    dup2(out_fd, 1);
    dup2(err_fd, 2);
    setpgid(0, 0);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(static_cast<long>(timeout_sec * 1000));
  ProcessResult res;
  int status = 0;
  while (true) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) {
      res.exit_code = -1;
      break;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      res.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (!res.timed_out && WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);

  auto slurp = [](const std::string& path) {
    std::ifstream f(path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  unlink(in_path.c_str());
  unlink(out_path.c_str());
  unlink(err_path.c_str());
  rmdir(dir.c_str());
  return res;
}

namespace {

// Tiny S-expression reader for solver models.
struct SExpr {
  std::string atom;
  std::vector<SExpr> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
  std::string str() const {
    if (is_atom()) return atom;
    std::string s = "(";
    for (size_t i = 0; i < items.size(); ++i) s += (i ? " " : "") + items[i].str();
    return s + ")";
  }
};

struct SExprParser {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  SExpr parse() {
    skip_ws();
    if (pos >= text.size()) throw SolverFailure("unexpected end of solver output");
    if (text[pos] == '(') {
      ++pos;
      SExpr e;
      while (true) {
        skip_ws();
        if (pos >= text.size()) throw SolverFailure("unbalanced parenthesis in solver output");
        if (text[pos] == ')') {
          ++pos;
          return e;
        }
        e.items.push_back(parse());
      }
    }
    SExpr e;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      e.atom += text[pos++];
    if (e.atom.empty()) throw SolverFailure("bad token in solver output");
    return e;
  }
};

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
  return true;
}

std::optional<Rational> parse_rational_expr(const SExpr& e) {
  if (e.is_atom()) {
    if (!looks_numeric(e.atom)) return std::nullopt;
    return rational_from_string(e.atom);
  }
  if (e.items.empty()) return std::nullopt;
  const std::string& op = e.items[0].atom;
  if (op == "-" && e.items.size() == 2) {
    auto v = parse_rational_expr(e.items[1]);
    if (!v) return std::nullopt;
    return Rational(-*v);
  }
  if (op == "/" && e.items.size() == 3) {
    auto a = parse_rational_expr(e.items[1]);
    auto b = parse_rational_expr(e.items[2]);
    if (!a || !b || *b == 0) return std::nullopt;
    return Rational(*a / *b);
  }
  return std::nullopt;
}

}  // namespace

SolveOutcome parse_solver_output(const std::string& output,
                                 const std::vector<Variable>& unknowns) {
  SolveOutcome res;
  SExprParser parser{output};
  std::optional<std::string> verdict;
  std::vector<SExpr> forms;
  try {
    while (!parser.at_end()) {
      SExpr e = parser.parse();
      if (e.is_atom() && (e.atom == "sat" || e.atom == "unsat" || e.atom == "unknown") &&
          !verdict) {
        verdict = e.atom;
      } else {
        forms.push_back(std::move(e));
      }
    }
  } catch (const SolverFailure& f) {
    res.verdict = SolverVerdict::Error;
    res.detail = f.what();
    return res;
  }

  if (!verdict) {
    res.verdict = SolverVerdict::Error;
    res.detail = "solver produced no verdict";
    return res;
  }
  if (*verdict == "unsat") {
    res.verdict = SolverVerdict::Unsat;
    return res;
  }
  if (*verdict == "unknown") {
    res.verdict = SolverVerdict::Unknown;
    return res;
  }

  res.verdict = SolverVerdict::Sat;
  std::map<std::string, const Variable*> by_name;
  for (auto& v : unknowns) by_name[v.name] = &v;

  for (auto& form : forms) {
    // Model shapes: (model (define-fun x () Real v) ...) or the plain list.
    const std::vector<SExpr>* defs = &form.items;
    if (!form.items.empty() && form.items[0].is_atom() && form.items[0].atom == "model") {
      defs = &form.items;
    }
    for (auto& def : *defs) {
      if (def.items.size() < 5) continue;
      if (!(def.items[0].is_atom() && def.items[0].atom == "define-fun")) continue;
      const std::string& name = def.items[1].atom;
      auto it = by_name.find(name);
      if (it == by_name.end()) continue;
      const SExpr& value = def.items[4];
      ModelValue mv;
      mv.term = value.str();
      mv.rational = parse_rational_expr(value);
      res.model.values[*it->second] = mv;
    }
  }

  // Model completion: a solver may omit unconstrained unknowns; they can
  // take any value, zero keeps everything rational.  The exact recheck
  // still guards against a wrong completion.
  for (auto& v : unknowns) {
    if (!res.model.values.count(v)) {
      res.model.values[v] = ModelValue{Rational(0), "0"};
      res.detail += (res.detail.empty() ? "" : "; ") + ("defaulted " + v.name + " to 0");
    }
  }
  return res;
}

std::string resolve_solver_command(const std::optional<std::string>& explicit_cmd) {
  if (explicit_cmd && !explicit_cmd->empty()) return *explicit_cmd;
  if (const char* env = std::getenv("POLYLASSO_SOLVER"); env && *env) return env;
  if (system("command -v z3 >/dev/null 2>&1") == 0) return "z3 -in";
  std::string wrapper = POLYLASSO_Z3_WASM_WRAPPER;
  if (!wrapper.empty()) {
    struct stat st{};
    if (stat(wrapper.c_str(), &st) == 0 &&
        system("command -v node >/dev/null 2>&1") == 0)
      return "node " + wrapper;
  }
  throw SolverFailure(
      "no SMT solver found: install z3, set POLYLASSO_SOLVER, or pass --solver-cmd");
}

SolveOutcome solve(const ConstraintSystem& cs, const SolverConfig& cfg) {
  std::string script = emit_smtlib(cs);
  if (cfg.random_seed) {
    auto pos = script.find('\n');
    script.insert(pos + 1,
                  "(set-option :random-seed " + std::to_string(*cfg.random_seed) + ")\n");
  }
  std::string cmd = resolve_solver_command(cfg.command.empty()
                                               ? std::nullopt
                                               : std::optional<std::string>(cfg.command));
  ProcessResult proc = run_process(cmd, script, cfg.timeout_sec);
  if (proc.timed_out) {
    SolveOutcome res;
    res.verdict = SolverVerdict::Unknown;
    res.detail = "timeout after " + std::to_string(cfg.timeout_sec) + "s";
    return res;
  }
  SolveOutcome res = parse_solver_output(proc.out, cs.unknowns);
  if (res.verdict == SolverVerdict::Error && !proc.err.empty())
    res.detail += (res.detail.empty() ? "" : "; ") + proc.err.substr(0, 500);
  return res;
}

namespace {

bool exact_substitution_check(const ConstraintSystem& cs,
                              const std::map<Variable, Rational>& model) {
  return satisfies(cs, model);
}

}  // namespace

bool recheck_model(const ConstraintSystem& cs, const SolverModel& model,
                   const SolverConfig& cfg) {
  for (auto& v : cs.unknowns)
    if (!model.values.count(v))
      throw SolverFailure("model does not cover unknown " + v.name);

  std::optional<bool> exact;
  if (model.all_rational()) exact = exact_substitution_check(cs, model.rationals());

  std::string script = emit_smtlib(cs);
  // get-model is pointless here; strip it and assert the model values.
  auto pos = script.rfind("(check-sat)\n");
  script = script.substr(0, pos);
  for (auto& [v, mv] : model.values)
    script += "(assert (= " + v.name + " " + mv.term + "))\n";
  script += "(check-sat)\n";

  std::string cmd = resolve_solver_command(cfg.command.empty()
                                               ? std::nullopt
                                               : std::optional<std::string>(cfg.command));
  ProcessResult proc = run_process(cmd, script, cfg.timeout_sec);
  if (proc.timed_out) throw SolverFailure("model recheck timed out");
  SolveOutcome out = parse_solver_output(proc.out, {});
  if (out.verdict == SolverVerdict::Error)
    throw SolverFailure("model recheck failed: " + out.detail);
  bool solver_ok = out.verdict == SolverVerdict::Sat;
  if (exact && *exact != solver_ok)
    throw SolverFailure("exact substitution check and solver recheck disagree");
  return solver_ok;
}

}  // namespace lasso
