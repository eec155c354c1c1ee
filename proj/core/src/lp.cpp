#include "cplkit/lp.hpp"

#include <algorithm>

#include "cplkit/errors.hpp"
#include "cplkit/focused.hpp"
#include "cplkit/polarized.hpp"
#include "cplkit/rng.hpp"

namespace cplkit {

namespace {

bool lower_start(char c) { return c >= 'a' && c <= 'z'; }
bool upper_start(char c) { return c >= 'A' && c <= 'Z'; }
bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view text) : text_(text) {}

  Program parse() {
    Program out;
    skip_trivia();
    while (pos_ < text_.size()) {
      out.clauses.push_back(clause());
      skip_trivia();
    }
    check_arities(out);
    return out;
  }

 private:
  Clause clause() {
    Clause c;
    c.line = line_;
    std::size_t start = pos_;
    c.head = atom();
    skip_trivia();
    if (peek_is(":-")) {
      pos_ += 2;
      for (;;) {
        skip_trivia();
        BodyLiteral lit;
        if (pos_ < text_.size() && text_[pos_] == '!') {
          ++pos_;
          lit.negated = true;
          skip_trivia();
        }
        lit.atom = atom();
        c.body.push_back(std::move(lit));
        skip_trivia();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    skip_trivia();
    if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.' at end of clause");
    ++pos_;
    c.source = squeeze(text_.substr(start, pos_ - start));
    check_range_restriction(c);
    return c;
  }

  AtomPat atom() {
    skip_trivia();
    if (pos_ >= text_.size() || !lower_start(text_[pos_]))
      fail("expected a predicate name (lowercase)");
    AtomPat a;
    a.pred = ident();
    skip_trivia();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      for (;;) {
        skip_trivia();
        if (pos_ >= text_.size()) fail("unterminated argument list");
        char c = text_[pos_];
        if (lower_start(c)) {
          a.args.push_back({false, ident()});
        } else if (upper_start(c)) {
          a.args.push_back({true, ident()});
        } else {
          fail("expected a constant or variable");
        }
        skip_trivia();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < text_.size() && text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')' in argument list");
      }
    }
    return a;
  }

  void check_range_restriction(const Clause& c) {
    for (const auto& arg : c.head.args) {
      if (!arg.is_var) continue;
      bool found = false;
      for (const auto& lit : c.body)
        for (const auto& b : lit.atom.args)
          if (b.is_var && b.text == arg.text) found = true;
      if (!found)
        throw RangeRestrictionError(
            "head variable '" + arg.text + "' does not occur in the body: " + c.source, c.line, 1);
    }
  }

  void check_arities(const Program& p) {
    std::map<std::string, std::size_t> arity;
    auto note = [&](const AtomPat& a, int line) {
      auto [it, fresh] = arity.emplace(a.pred, a.args.size());
      if (!fresh && it->second != a.args.size())
        throw ParseError("predicate '" + a.pred + "' used with inconsistent arity", line, 1);
    };
    for (const auto& c : p.clauses) {
      note(c.head, c.line);
      for (const auto& lit : c.body) note(lit.atom, c.line);
    }
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool peek_is(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  static std::string squeeze(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        space = !out.empty();
        continue;
      }
      if (space) out += ' ';
      space = false;
      out += c;
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string ground_text(const AtomPat& a,
                        const std::map<std::string, std::string>& subst) {
  std::string out = a.pred;
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      out += a.args[i].is_var ? subst.at(a.args[i].text) : a.args[i].text;
    }
    out += ')';
  }
  return out;
}

}  // namespace

Program parse_program(std::string_view text) { return ProgramParser(text).parse(); }

std::string format_ground_atom(const AtomPat& atom) {
  std::string out = atom.pred;
  if (!atom.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i) out += ',';
      out += atom.args[i].text;
    }
    out += ')';
  }
  return out;
}

AtomPat parse_ground_atom(std::string_view text) {
  // Reuse the clause parser on "<atom>." and take the head.
  std::string padded = std::string(text) + ".";
  Program p = parse_program(padded);
  if (p.clauses.size() != 1 || !p.clauses[0].body.empty())
    throw ParseError("expected a single ground atom", 1, 1);
  for (const auto& arg : p.clauses[0].head.args)
    if (arg.is_var) throw ParseError("expected a ground atom, found a variable", 1, 1);
  return p.clauses[0].head;
}

GroundProgram ground(const Program& program) {
  GroundProgram out;
  std::set<std::string> constants;
  for (const auto& c : program.clauses) {
    for (const auto& arg : c.head.args)
      if (!arg.is_var) constants.insert(arg.text);
    for (const auto& lit : c.body) {
      out.predicates.insert(lit.atom.pred);
      for (const auto& arg : lit.atom.args)
        if (!arg.is_var) constants.insert(arg.text);
    }
    out.predicates.insert(c.head.pred);
  }
  out.constants.assign(constants.begin(), constants.end());

  for (const auto& c : program.clauses) {
    std::set<std::string> vars;
    for (const auto& arg : c.head.args)
      if (arg.is_var) vars.insert(arg.text);
    for (const auto& lit : c.body)
      for (const auto& arg : lit.atom.args)
        if (arg.is_var) vars.insert(arg.text);

    if (!vars.empty() && out.constants.empty())
      throw EmptyDomainError("clause has variables but the program has no constants: " + c.source);

    std::vector<std::string> var_list(vars.begin(), vars.end());
    std::map<std::string, std::string> subst;
    // Enumerate all substitutions over the constant set.
    std::vector<std::size_t> odometer(var_list.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < var_list.size(); ++i)
        subst[var_list[i]] = out.constants[odometer[i]];
      GroundClause g;
      g.head = ground_text(c.head, subst);
      g.head_pred = c.head.pred;
      g.origin = c.source;
      for (const auto& lit : c.body)
        g.body.push_back({ground_text(lit.atom, subst), lit.atom.pred, lit.negated});
      out.clauses.push_back(std::move(g));
      std::size_t i = 0;
      for (; i < odometer.size(); ++i) {
        if (++odometer[i] < out.constants.size()) break;
        odometer[i] = 0;
      }
      if (i == odometer.size()) break;
      if (var_list.empty()) break;
    }
  }
  return out;
}

StratifiedProgram stratify(const GroundProgram& program) {
  // Predicate dependency graph: edge body -> head, marked negative on
  // negated literals.
  std::vector<std::string> preds(program.predicates.begin(), program.predicates.end());
  auto index = [&](const std::string& p) {
    return std::lower_bound(preds.begin(), preds.end(), p) - preds.begin();
  };
  const std::size_t n = preds.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& c : program.clauses)
    for (const auto& lit : c.body) reach[index(lit.pred)][index(c.head_pred)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;

  // A negative edge inside a strongly connected component is paradoxical.
  for (const auto& c : program.clauses)
    for (const auto& lit : c.body)
      if (lit.negated && reach[index(c.head_pred)][index(lit.pred)])
        throw UnstratifiableError(
            "negation on '" + lit.pred + "' closes a dependency cycle in: " + c.origin, c.origin);

  StratifiedProgram sp;
  sp.ground = program;
  for (const auto& p : preds) sp.stratum[p] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : program.clauses) {
      int need = 1;
      for (const auto& lit : c.body)
        need = std::max(need, sp.stratum[lit.pred] + (lit.negated ? 1 : 0));
      if (need > sp.stratum[c.head_pred]) {
        sp.stratum[c.head_pred] = need;
        changed = true;
      }
    }
  }

  for (const auto& c : program.clauses)
    for (const auto& lit : c.body)
      if (lit.negated && sp.stratum[lit.pred] >= 2)
        throw TooManyStrataError(
            "a valid stratification needs more than two levels (engine limit): " + c.origin,
            c.origin);
  for (const auto& [pred, level] : sp.stratum)
    if (level > 2)
      throw TooManyStrataError(
          "a valid stratification needs more than two levels (engine limit): " + pred, pred);

  for (const auto& c : program.clauses)
    (sp.stratum[c.head_pred] == 1 ? sp.stratum1 : sp.stratum2).push_back(c);
  return sp;
}

int stratum_of_atom(const StratifiedProgram& sp, const std::string& atom) {
  AtomPat pat = parse_ground_atom(atom);
  auto it = sp.stratum.find(pat.pred);
  return it == sp.stratum.end() ? 1 : it->second;
}

Translation translate(const StratifiedProgram& sp) {
  Translation t;
  t.frame = Frame::build({"beta", "gamma"}, {{"beta", "gamma"}});
  t.lower = t.frame.id_of("beta");
  t.upper = t.frame.id_of("gamma");

  std::vector<PolJudgment> items;
  for (const auto& c : sp.stratum1) {
    PolProp chain = up(pos_atom(c.head));
    for (auto it = c.body.rbegin(); it != c.body.rend(); ++it)
      chain = neg_imp(pos_atom(it->atom), std::move(chain));
    items.push_back({down(std::move(chain)), t.upper});
  }
  for (const auto& c : sp.stratum2) {
    PolProp chain = up(pos_atom(c.head));
    for (auto it = c.body.rbegin(); it != c.body.rend(); ++it) {
      PolProp premise;
      if (it->negated) {
        premise = down(neg_imp(pos_box(pos_atom(it->atom)), up(pos_bot())));
      } else if (sp.stratum.at(it->pred) == 1) {
        premise = pos_box(pos_atom(it->atom));
      } else {
        premise = pos_atom(it->atom);
      }
      chain = neg_imp(std::move(premise), std::move(chain));
    }
    items.push_back({down(std::move(chain)), t.lower});
  }
  t.ctx = PolContext(std::move(items));
  return t;
}

std::set<std::string> immediate(int stratum_level, const std::vector<GroundClause>& rules,
                                const Database& db) {
  std::set<std::string> out;
  for (const auto& c : rules) {
    bool fires = true;
    for (const auto& lit : c.body) {
      bool present;
      if (stratum_level == 1) {
        present = db.upper.count(lit.atom) > 0;
      } else {
        int lit_stratum = db.stratum.count(lit.pred) ? db.stratum.at(lit.pred) : 1;
        present = lit_stratum == 1 ? db.upper.count(lit.atom) > 0 : db.lower.count(lit.atom) > 0;
      }
      if (lit.negated ? present : !present) {
        fires = false;
        break;
      }
    }
    if (!fires) continue;
    const auto& home = stratum_level == 1 ? db.upper : db.lower;
    if (!home.count(c.head)) out.insert(c.head);
  }
  return out;
}

namespace {

std::vector<GroundClause> shuffled(const std::vector<GroundClause>& rules,
                                   std::optional<std::uint64_t> seed) {
  std::vector<GroundClause> out = rules;
  if (!seed) return out;
  SplitMix64 rng(*seed);
  for (std::size_t i = out.size(); i > 1; --i)
    std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

void run_stratum(int level, const std::vector<GroundClause>& rules, Database& db,
                 const SaturationOptions& opts) {
  auto ordered = shuffled(rules, opts.shuffle_seed);
  std::set<std::string> delta;
  int round = 0;
  for (;;) {
    ++round;
    std::set<std::string> fresh;
    if (!opts.semi_naive || round == 1) {
      fresh = immediate(level, ordered, db);
    } else {
      // Semi-naive: only rules with a positive same-stratum premise in the
      // previous delta can produce anything new.
      std::vector<GroundClause> candidates;
      for (const auto& c : ordered) {
        bool touches = false;
        for (const auto& lit : c.body) {
          if (lit.negated) continue;
          int lit_stratum = db.stratum.count(lit.pred) ? db.stratum.at(lit.pred) : 1;
          if (lit_stratum == level && delta.count(lit.atom)) touches = true;
        }
        if (touches) candidates.push_back(c);
      }
      fresh = immediate(level, candidates, db);
    }
    if (fresh.empty()) break;
    for (const auto& atom : fresh) {
      (level == 1 ? db.upper : db.lower).insert(atom);
      if (opts.log) opts.log->push_back({level, round, atom});
    }
    delta = std::move(fresh);
  }
}

}  // namespace

Database saturate(const StratifiedProgram& sp, const SaturationOptions& opts) {
  Database db;
  db.stratum = sp.stratum;
  run_stratum(1, sp.stratum1, db, opts);
  run_stratum(2, sp.stratum2, db, opts);
  return db;
}

bool query(const Database& db, const std::string& atom) {
  AtomPat pat = parse_ground_atom(atom);
  auto it = db.stratum.find(pat.pred);
  if (it == db.stratum.end()) return false;
  std::string canon = format_ground_atom(pat);
  return it->second == 1 ? db.upper.count(canon) > 0 : db.lower.count(canon) > 0;
}

bool crosscheck(const StratifiedProgram& sp, const std::string& atom,
                const SearchLimits& limits) {
  Translation t = translate(sp);
  AtomPat pat = parse_ground_atom(atom);
  std::string canon = format_ground_atom(pat);
  WorldId home = stratum_of_atom(sp, canon) == 1 ? t.upper : t.lower;
  FocSequent goal = make_inv(t.ctx, std::nullopt, up(pos_atom(canon)), home);
  return decide_foc(t.frame, goal, limits).provable();
}

std::vector<std::string> herbrand_base(const Program& program) {
  GroundProgram g = ground(program);
  std::map<std::string, std::size_t> arity;
  for (const auto& c : program.clauses) {
    arity[c.head.pred] = c.head.args.size();
    for (const auto& lit : c.body) arity[lit.atom.pred] = lit.atom.args.size();
  }
  std::set<std::string> atoms;
  for (const auto& [pred, k] : arity) {
    if (k == 0) {
      atoms.insert(pred);
      continue;
    }
    if (g.constants.empty()) continue;
    std::vector<std::size_t> odometer(k, 0);
    for (;;) {
      std::string s = pred + "(";
      for (std::size_t i = 0; i < k; ++i) {
        if (i) s += ',';
        s += g.constants[odometer[i]];
      }
      s += ')';
      atoms.insert(std::move(s));
      std::size_t i = 0;
      for (; i < k; ++i) {
        if (++odometer[i] < g.constants.size()) break;
        odometer[i] = 0;
      }
      if (i == k) break;
    }
  }
  return {atoms.begin(), atoms.end()};
}

}  // namespace cplkit
