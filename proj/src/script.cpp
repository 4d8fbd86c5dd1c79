#include "quadperm/script.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "quadperm/rng.hpp"

namespace quadperm {
namespace sym {
namespace {

// ---- expression parsing ----------------------------------------------------
// EXPR := TERM ('+' TERM)* ; TERM := FACTOR ('*' FACTOR)* ;
// FACTOR := BASE ('^' INT)? ; BASE := '0' | '1' | NAME | '(' EXPR ')'
// NAME resolves first to a script binding, then to a ring variable.

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  int line;

  explicit Parser(const std::string& text, int line_no)
      : s(text), line(line_no) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("line " + std::to_string(line) + ": " + why + " in '" +
                     s + "'");
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
};

struct Expr {
  enum class Kind { Sum, Product, Power, Atom, Zero, One };
  Kind kind;
  std::vector<Expr> kids;
  int exponent = 0;
  std::string atom;
};

Expr parse_expr(Parser& p);

Expr parse_base(Parser& p) {
  p.skip_ws();
  if (p.eat('(')) {
    Expr e = parse_expr(p);
    if (!p.eat(')')) p.fail("expected ')'");
    return e;
  }
  char c = p.peek();
  if (c == '0') {
    ++p.pos;
    return Expr{Expr::Kind::Zero, {}, 0, ""};
  }
  if (c == '1') {
    ++p.pos;
    return Expr{Expr::Kind::One, {}, 0, ""};
  }
  if (std::isalpha(static_cast<unsigned char>(c))) {
    std::size_t start = p.pos;
    while (p.pos < p.s.size() &&
           (std::isalnum(static_cast<unsigned char>(p.s[p.pos])) ||
            p.s[p.pos] == '_'))
      ++p.pos;
    return Expr{Expr::Kind::Atom, {}, 0, p.s.substr(start, p.pos - start)};
  }
  p.fail("expected a term");
}

Expr parse_factor(Parser& p) {
  Expr base = parse_base(p);
  if (p.eat('^')) {
    p.skip_ws();
    std::size_t start = p.pos;
    while (p.pos < p.s.size() &&
           std::isdigit(static_cast<unsigned char>(p.s[p.pos])))
      ++p.pos;
    if (start == p.pos) p.fail("expected exponent");
    Expr e{Expr::Kind::Power, {}, std::stoi(p.s.substr(start, p.pos - start)),
           ""};
    e.kids.push_back(std::move(base));
    return e;
  }
  return base;
}

Expr parse_term(Parser& p) {
  Expr e{Expr::Kind::Product, {}, 0, ""};
  e.kids.push_back(parse_factor(p));
  while (p.eat('*')) e.kids.push_back(parse_factor(p));
  return e.kids.size() == 1 ? std::move(e.kids[0]) : std::move(e);
}

Expr parse_expr(Parser& p) {
  Expr e{Expr::Kind::Sum, {}, 0, ""};
  e.kids.push_back(parse_term(p));
  while (p.eat('+')) e.kids.push_back(parse_term(p));
  return e.kids.size() == 1 ? std::move(e.kids[0]) : std::move(e);
}

Expr parse_full_expr(const std::string& text, int line) {
  Parser p(text, line);
  Expr e = parse_expr(p);
  p.skip_ws();
  if (p.pos != p.s.size()) p.fail("trailing characters");
  return e;
}

Value eval_expr(const Expr& e, const std::map<std::string, Value>& env,
                int line) {
  switch (e.kind) {
    case Expr::Kind::Zero:
      return SparsePoly::zero();
    case Expr::Kind::One:
      return SparsePoly::one();
    case Expr::Kind::Atom: {
      auto it = env.find(e.atom);
      if (it != env.end()) return it->second;
      if (auto v = var_by_name(e.atom)) return SparsePoly::var(*v);
      throw UndefinedName("line " + std::to_string(line) + ": '" + e.atom +
                          "'");
    }
    case Expr::Kind::Power: {
      Value base = eval_expr(e.kids[0], env, line);
      auto* p = std::get_if<SparsePoly>(&base);
      if (!p)
        throw ParseError("line " + std::to_string(line) +
                         ": cannot exponentiate a set");
      return p->pow(e.exponent);
    }
    case Expr::Kind::Product:
    case Expr::Kind::Sum: {
      SparsePoly acc;
      bool first = true;
      for (const Expr& kid : e.kids) {
        Value v = eval_expr(kid, env, line);
        auto* p = std::get_if<SparsePoly>(&v);
        if (!p)
          throw ParseError("line " + std::to_string(line) +
                           ": sets cannot appear inside arithmetic");
        if (first) {
          acc = *p;
          first = false;
        } else {
          acc = e.kind == Expr::Kind::Sum ? acc + *p : acc * *p;
        }
      }
      return acc;
    }
  }
  throw Error("unreachable");
}

SparsePoly eval_poly(const std::string& text,
                     const std::map<std::string, Value>& env, int line) {
  Value v = eval_expr(parse_full_expr(text, line), env, line);
  auto* p = std::get_if<SparsePoly>(&v);
  if (!p)
    throw ParseError("line " + std::to_string(line) +
                     ": expected a polynomial, got a set");
  return *p;
}

Monomial eval_monomial(const std::string& text,
                       const std::map<std::string, Value>& env, int line) {
  SparsePoly p = eval_poly(text, env, line);
  if (p.term_count() != 1)
    throw ParseError("line " + std::to_string(line) +
                     ": rewrite left side must be a single monomial");
  return p.leading();
}

VarId eval_var(const std::string& text, int line) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          t.end());
  auto v = var_by_name(t);
  if (!v)
    throw ParseError("line " + std::to_string(line) + ": unknown variable '" +
                     t + "'");
  return *v;
}

std::vector<std::string> split_fields(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

PolySet canonical_set(std::vector<SparsePoly> polys) {
  std::sort(polys.begin(), polys.end());
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  return polys;
}

// Syntax-only validation at parse time; name resolution happens at run time.
void check_expr_syntax(const std::string& text, int line) {
  parse_full_expr(text, line);
}

void check_var_syntax(const std::string& text, int line) {
  eval_var(text, line);
}

void check_int_syntax(const std::string& text, int line) {
  std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) {
        return std::isdigit(c);
      }))
    throw ParseError("line " + std::to_string(line) +
                     ": expected an integer, got '" + text + "'");
}

const char* kind_name(Step::Kind k) {
  switch (k) {
    case Step::Kind::Define:
      return "def";
    case Step::Kind::Substitute:
      return "subst";
    case Step::Kind::ExtractCoefficients:
      return "coeffs";
    case Step::Kind::Resultant:
      return "res";
    case Step::Kind::EvalRational:
      return "evalrat";
    case Step::Kind::AssertDivides:
      return "assert_divides";
    case Step::Kind::AssertMember:
      return "assert_member";
    case Step::Kind::AssertZero:
      return "assert_zero";
    case Step::Kind::AssertPairSumDivides:
      return "assert_pair_sum_divides";
    case Step::Kind::Note:
      return "note";
  }
  return "?";
}

}  // namespace

ProofScript parse_script(const std::string& id, const std::string& text,
                         const IncludeResolver& resolver) {
  ProofScript script;
  script.id = id;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line;
    auto hash = body.find('#');
    if (hash != std::string::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;

    std::istringstream ls(body);
    std::string verb;
    ls >> verb;
    std::string rest = trim(body.substr(verb.size()));

    if (verb == "include") {
      if (!resolver) throw ParseError("include without a resolver");
      ProofScript inc = parse_script(rest, resolver(rest), resolver);
      for (Step& s : inc.steps) script.steps.push_back(std::move(s));
      continue;
    }

    Step step;
    step.line = line_no;
    auto parse_binding = [&](Step::Kind kind) {
      step.kind = kind;
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": expected '='");
      step.name = trim(rest.substr(0, eq));
      if (step.name.empty() || var_by_name(step.name))
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad binding name '" + step.name + "'");
      for (auto& f : split_fields(rest.substr(eq + 1), ':'))
        step.args.push_back(trim(f));
    };

    if (verb == "def") {
      parse_binding(Step::Kind::Define);
      if (step.args.size() != 1)
        throw ParseError("line " + std::to_string(line_no) + ": def NAME = EXPR");
    } else if (verb == "subst") {
      parse_binding(Step::Kind::Substitute);
      if (step.args.size() != 2)
        throw ParseError("line " + std::to_string(line_no) +
                         ": subst NAME = EXPR : MONO -> EXPR");
      auto arrow = step.args[1].find("->");
      if (arrow == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) +
                         ": missing '->' in rewrite rule");
      std::string lhs = trim(step.args[1].substr(0, arrow));
      std::string rhs = trim(step.args[1].substr(arrow + 2));
      step.args[1] = lhs;
      step.args.push_back(rhs);
    } else if (verb == "coeffs") {
      parse_binding(Step::Kind::ExtractCoefficients);
      if (step.args.size() != 3)
        throw ParseError("line " + std::to_string(line_no) +
                         ": coeffs NAME = EXPR : VAR : VAR");
    } else if (verb == "res") {
      parse_binding(Step::Kind::Resultant);
      if (step.args.size() != 3)
        throw ParseError("line " + std::to_string(line_no) +
                         ": res NAME = EXPR : EXPR : VAR");
    } else if (verb == "evalrat") {
      parse_binding(Step::Kind::EvalRational);
      if (step.args.size() != 5)
        throw ParseError("line " + std::to_string(line_no) +
                         ": evalrat NAME = EXPR : VAR : NUM : DEN : POW");
    } else if (verb == "assert_divides" || verb == "assert_member" ||
               verb == "assert_pair_sum_divides") {
      step.kind = verb == "assert_divides" ? Step::Kind::AssertDivides
                  : verb == "assert_member"
                      ? Step::Kind::AssertMember
                      : Step::Kind::AssertPairSumDivides;
      for (auto& f : split_fields(rest, ':')) step.args.push_back(trim(f));
      if (step.args.size() != 2)
        throw ParseError("line " + std::to_string(line_no) + ": " + verb +
                         " EXPR : NAME");
    } else if (verb == "assert_zero") {
      step.kind = Step::Kind::AssertZero;
      step.args.push_back(trim(rest));
    } else if (verb == "note") {
      step.kind = Step::Kind::Note;
      step.args.push_back(rest);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown verb '" +
                       verb + "'");
    }
    switch (step.kind) {
      case Step::Kind::Define:
      case Step::Kind::AssertZero:
        check_expr_syntax(step.args[0], line_no);
        break;
      case Step::Kind::Substitute:
        check_expr_syntax(step.args[0], line_no);
        check_expr_syntax(step.args[1], line_no);
        check_expr_syntax(step.args[2], line_no);
        break;
      case Step::Kind::ExtractCoefficients:
        check_expr_syntax(step.args[0], line_no);
        check_var_syntax(step.args[1], line_no);
        check_var_syntax(step.args[2], line_no);
        break;
      case Step::Kind::Resultant:
        check_expr_syntax(step.args[0], line_no);
        check_expr_syntax(step.args[1], line_no);
        check_var_syntax(step.args[2], line_no);
        break;
      case Step::Kind::EvalRational:
        check_expr_syntax(step.args[0], line_no);
        check_var_syntax(step.args[1], line_no);
        check_expr_syntax(step.args[2], line_no);
        check_expr_syntax(step.args[3], line_no);
        check_int_syntax(step.args[4], line_no);
        break;
      case Step::Kind::AssertDivides:
      case Step::Kind::AssertMember:
      case Step::Kind::AssertPairSumDivides:
        check_expr_syntax(step.args[0], line_no);
        check_expr_syntax(step.args[1], line_no);
        break;
      case Step::Kind::Note:
        break;
    }
    script.steps.push_back(std::move(step));
  }
  return script;
}

ScriptReport ScriptRunner::run(const ProofScript& script) {
  env_.clear();
  ScriptReport report;
  report.id = script.id;
  report.passed = true;
  int index = 0;
  for (const Step& step : script.steps) {
    StepReport sr;
    sr.index = index++;
    sr.kind = kind_name(step.kind);
    sr.name = step.name;
    try {
      switch (step.kind) {
        case Step::Kind::Note:
          sr.detail = step.args[0];
          break;
        case Step::Kind::Define: {
          Value v = eval_expr(parse_full_expr(step.args[0], step.line), env_,
                              step.line);
          if (auto* p = std::get_if<SparsePoly>(&v))
            sr.detail = std::to_string(p->term_count()) + " terms";
          else
            sr.detail =
                std::to_string(std::get<PolySet>(v).size()) + " members";
          env_[step.name] = std::move(v);
          break;
        }
        case Step::Kind::Substitute: {
          Value src = eval_expr(parse_full_expr(step.args[0], step.line), env_,
                                step.line);
          Monomial mono = eval_monomial(step.args[1], env_, step.line);
          SparsePoly repl = eval_poly(step.args[2], env_, step.line);
          if (auto* p = std::get_if<SparsePoly>(&src)) {
            SparsePoly out = substitution(*p, mono, repl);
            sr.detail = std::to_string(out.term_count()) + " terms";
            env_[step.name] = std::move(out);
          } else {
            PolySet out;
            for (const SparsePoly& m : std::get<PolySet>(src))
              out.push_back(substitution(m, mono, repl));
            out = canonical_set(std::move(out));
            sr.detail = std::to_string(out.size()) + " members";
            env_[step.name] = std::move(out);
          }
          break;
        }
        case Step::Kind::ExtractCoefficients: {
          SparsePoly p = eval_poly(step.args[0], env_, step.line);
          VarId v1 = eval_var(step.args[1], step.line);
          VarId v2 = eval_var(step.args[2], step.line);
          PolySet out = find_coefficients2(p, v1, v2);
          sr.detail = std::to_string(out.size()) + " members";
          env_[step.name] = std::move(out);
          break;
        }
        case Step::Kind::Resultant: {
          Value src = eval_expr(parse_full_expr(step.args[0], step.line), env_,
                                step.line);
          SparsePoly other = eval_poly(step.args[1], env_, step.line);
          VarId v = eval_var(step.args[2], step.line);
          auto run_one = [&](const SparsePoly& p) {
            SparsePoly r = resultant(p, other, v);
            resultants_.push_back(ResultantInstance{p, other, v, r});
            return r;
          };
          if (auto* p = std::get_if<SparsePoly>(&src)) {
            SparsePoly out = run_one(*p);
            sr.detail = std::to_string(out.term_count()) + " terms";
            env_[step.name] = std::move(out);
          } else {
            PolySet out;
            for (const SparsePoly& m : std::get<PolySet>(src))
              out.push_back(run_one(m));
            out = canonical_set(std::move(out));
            sr.detail = std::to_string(out.size()) + " members";
            env_[step.name] = std::move(out);
          }
          break;
        }
        case Step::Kind::EvalRational: {
          SparsePoly src = eval_poly(step.args[0], env_, step.line);
          VarId v = eval_var(step.args[1], step.line);
          SparsePoly num = eval_poly(step.args[2], env_, step.line);
          SparsePoly den = eval_poly(step.args[3], env_, step.line);
          int powarg = std::stoi(step.args[4]);
          int d = std::max(0, src.degree(v));
          if (powarg < d)
            throw ParseError("line " + std::to_string(step.line) +
                             ": clearing power below the degree");
          // den^pow * src(v -> num/den), expanded polynomially.
          SparsePoly out;
          std::vector<SparsePoly> numpow{SparsePoly::one()},
              denpow{SparsePoly::one()};
          for (int e = 1; e <= d; ++e) {
            numpow.push_back(numpow.back() * num);
            denpow.push_back(denpow.back() * den);
          }
          // coefficients of src in v
          std::vector<std::vector<Monomial>> buckets(
              static_cast<std::size_t>(d) + 1);
          for (const Monomial& t : src.terms()) {
            int e = t.exponent(v);
            buckets[static_cast<std::size_t>(e)].push_back(
                t / Monomial::var(v, e));
          }
          for (int e = 0; e <= d; ++e) {
            SparsePoly ce =
                SparsePoly::from_terms(std::move(buckets[static_cast<std::size_t>(e)]));
            if (ce.is_zero()) continue;
            out = out + ce * numpow[static_cast<std::size_t>(e)] *
                            denpow[static_cast<std::size_t>(d - e)];
          }
          for (int e = d; e < powarg; ++e) out = out * den;
          sr.detail = std::to_string(out.term_count()) + " terms";
          env_[step.name] = std::move(out);
          break;
        }
        case Step::Kind::AssertDivides: {
          sr.is_assertion = true;
          SparsePoly f = eval_poly(step.args[0], env_, step.line);
          Value target = eval_expr(parse_full_expr(step.args[1], step.line),
                                   env_, step.line);
          if (auto* p = std::get_if<SparsePoly>(&target)) {
            sr.ok = !p->is_zero() && divides(f, *p);
            if (!sr.ok) sr.detail = "target: " + p->to_string();
          } else {
            const PolySet& set = std::get<PolySet>(target);
            sr.ok = false;
            for (const SparsePoly& member : set) {
              if (!member.is_zero() && divides(f, member)) {
                sr.ok = true;
                sr.detail = "member: " + member.to_string();
                break;
              }
            }
            if (!sr.ok) sr.detail = "no nonzero member divisible";
          }
          break;
        }
        case Step::Kind::AssertMember: {
          sr.is_assertion = true;
          SparsePoly want = eval_poly(step.args[0], env_, step.line);
          Value target = eval_expr(parse_full_expr(step.args[1], step.line),
                                   env_, step.line);
          const PolySet* set = std::get_if<PolySet>(&target);
          if (!set)
            throw ParseError("line " + std::to_string(step.line) +
                             ": assert_member target must be a set");
          sr.ok = std::find(set->begin(), set->end(), want) != set->end();
          if (!sr.ok) sr.detail = "missing: " + want.to_string();
          break;
        }
        case Step::Kind::AssertZero: {
          sr.is_assertion = true;
          Value target = eval_expr(parse_full_expr(step.args[0], step.line),
                                   env_, step.line);
          if (auto* p = std::get_if<SparsePoly>(&target)) {
            sr.ok = p->is_zero();
            if (!sr.ok) sr.detail = p->to_string();
          } else {
            sr.ok = true;
            for (const SparsePoly& member : std::get<PolySet>(target))
              if (!member.is_zero()) {
                sr.ok = false;
                sr.detail = member.to_string();
                break;
              }
          }
          break;
        }
        case Step::Kind::AssertPairSumDivides: {
          sr.is_assertion = true;
          SparsePoly f = eval_poly(step.args[0], env_, step.line);
          Value target = eval_expr(parse_full_expr(step.args[1], step.line),
                                   env_, step.line);
          const PolySet* set = std::get_if<PolySet>(&target);
          if (!set)
            throw ParseError("line " + std::to_string(step.line) +
                             ": assert_pair_sum_divides target must be a set");
          sr.ok = false;
          for (std::size_t i = 0; i < set->size() && !sr.ok; ++i)
            for (std::size_t j = i + 1; j < set->size(); ++j) {
              SparsePoly sum = (*set)[i] + (*set)[j];
              if (!sum.is_zero() && divides(f, sum) &&
                  !divides(f, (*set)[i])) {
                sr.ok = true;
                sr.detail = "members " + std::to_string(i) + "+" +
                            std::to_string(j);
                break;
              }
            }
          if (!sr.ok) sr.detail = "no member pair sums to a multiple";
          break;
        }
      }
    } catch (const Error& e) {
      sr.ok = false;
      sr.detail = e.what();
      report.steps.push_back(sr);
      report.passed = false;
      return report;  // computational failure poisons downstream names
    }
    if (!sr.ok) report.passed = false;
    report.steps.push_back(sr);
  }
  return report;
}

int cross_check_resultants(const std::vector<ResultantInstance>& instances,
                           int checks, std::uint64_t seed) {
  if (instances.empty()) return 0;
  FieldSpec fs = FieldSpec::make(5);  // GF(32) specializations
  SplitMix rng(seed);
  int done = 0;
  int attempts = 0;
  while (done < checks && attempts < checks * 50) {
    ++attempts;
    const ResultantInstance& inst =
        instances[rng.below(instances.size())];
    std::array<Bits, kNumVars> vals{};
    for (auto& v : vals) v = static_cast<Bits>(rng.below(fs.q()));
    const int dp = inst.p.degree(inst.v), dq = inst.q.degree(inst.v);
    if (dp <= 0 || dq <= 0) continue;  // convention paths, nothing to check
    std::vector<Bits> pc = inst.p.eval_coeffs(fs, inst.v, vals);
    std::vector<Bits> qc = inst.q.eval_coeffs(fs, inst.v, vals);
    // Specialization commutes with the resultant only when the leading
    // v-coefficients stay nonzero.
    if (pc.back() == 0 || qc.back() == 0) continue;
    Bits expect = univariate_resultant(fs, pc, qc);
    Bits got = inst.result.eval(fs, vals);
    if (expect != got)
      throw Error("resultant specialization mismatch on " +
                  std::to_string(done));
    ++done;
  }
  if (done < checks)
    throw Error("could not complete resultant cross-checks (degenerate specializations)");
  return done;
}

}  // namespace sym
}  // namespace quadperm
