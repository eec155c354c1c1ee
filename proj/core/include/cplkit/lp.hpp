// Stratified-Datalog front end compiled through the de-tethered logic.
//
// Program files: `%` comments; facts `p(a,b).`; rules
// `h(X) :- b1(X), !b2(X).`; predicates and constants lowercase, variables
// uppercase-initial; zero-arity atoms written bare. Exactly two strata:
// negation may only consult the lower stratum. Saturation evaluates stratum
// 1 to fixpoint at the upper world, then stratum 2 at the lower one; the
// translation renders stratum-1 clauses as judgments at the upper world and
// stratum-2 clauses at the lower, with lower-stratum references boxed and
// negated references rendered as refutations of the boxed atom.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/cpl_prover.hpp"  // SearchLimits
#include "cplkit/frame.hpp"

namespace cplkit {

struct TermArg {
  bool is_var = false;
  std::string text;
  bool operator==(const TermArg&) const = default;
};

struct AtomPat {
  std::string pred;
  std::vector<TermArg> args;
};

struct BodyLiteral {
  AtomPat atom;
  bool negated = false;
};

struct Clause {
  AtomPat head;
  std::vector<BodyLiteral> body;
  std::string source;  // original text, for error messages
  int line = 0;
};

struct Program {
  std::vector<Clause> clauses;
};

Program parse_program(std::string_view text);  // ParseError / RangeRestrictionError

struct GroundLiteral {
  std::string atom;  // canonical "p(a,b)" / "p"
  std::string pred;
  bool negated = false;
};

struct GroundClause {
  std::string head;
  std::string head_pred;
  std::vector<GroundLiteral> body;
  std::string origin;  // source clause text
};

struct GroundProgram {
  std::vector<GroundClause> clauses;
  std::vector<std::string> constants;   // sorted
  std::set<std::string> predicates;
};

GroundProgram ground(const Program& program);  // EmptyDomainError

struct StratifiedProgram {
  GroundProgram ground;
  std::map<std::string, int> stratum;     // predicate -> 1 | 2
  std::vector<GroundClause> stratum1, stratum2;
};

// Predicate dependency analysis; minimal strata. UnstratifiableError when a
// negative edge closes a cycle, TooManyStrataError beyond two levels.
StratifiedProgram stratify(const GroundProgram& program);

int stratum_of_atom(const StratifiedProgram& sp, const std::string& atom);  // unknown -> 1

struct Translation {
  Frame frame;  // two worlds, lower -> upper
  WorldId lower = kNoWorld;  // stratum-2 world
  WorldId upper = kNoWorld;  // stratum-1 world
  PolContext ctx;
};

Translation translate(const StratifiedProgram& sp);

struct Database {
  std::set<std::string> upper;  // stratum-1 atoms
  std::set<std::string> lower;  // stratum-2 atoms
  std::map<std::string, int> stratum;  // copied from the program

  bool contains(const std::string& atom, int stratum_level) const {
    return stratum_level == 1 ? upper.count(atom) > 0 : lower.count(atom) > 0;
  }
};

// Immediate consequences of one stratum's rules. Stratum 2 reads positive
// stratum-1 premises from the saturated upper set and negated ones by
// absence from it.
std::set<std::string> immediate(int stratum_level, const std::vector<GroundClause>& rules,
                                const Database& db);

struct SaturationEvent {
  int stratum;
  int round;
  std::string atom;
};

struct SaturationOptions {
  bool semi_naive = false;
  std::optional<std::uint64_t> shuffle_seed;  // shuffles rule order; fixpoint must not move
  std::vector<SaturationEvent>* log = nullptr;
};

Database saturate(const StratifiedProgram& sp, const SaturationOptions& opts = {});

// Membership at the atom's stratum world; unknown predicates answer false.
bool query(const Database& db, const std::string& atom);

// Verdict of the focused prover on the translated context; must agree with
// query over saturate.
bool crosscheck(const StratifiedProgram& sp, const std::string& atom,
                const SearchLimits& limits = {});

// Canonical text of a ground atom pattern; parses "p(a,b)" / "p".
std::string format_ground_atom(const AtomPat& atom);
AtomPat parse_ground_atom(std::string_view text);  // ParseError

// All ground atoms over the program's predicates and constants, sorted.
std::vector<std::string> herbrand_base(const Program& program);

}  // namespace cplkit
