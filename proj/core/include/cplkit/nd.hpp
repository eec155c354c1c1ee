// Natural-deduction proof terms for the tethered (cpl) and de-tethered
// (cpls) variants: checking, substitution, weakening, local-soundness
// reduction, local-completeness expansion, and extraction from sequent
// proofs.
//
// Hypotheses are positional: positions [0, |ctx|) are the canonical context
// in its sorted order, and each binder appends one judgment at the end.
// Higher-order premises are finite tables keyed by successor world; checking
// recomputes the witness sets through the variant's provability oracle
// (decide_cpl for cpl, the focused decider on the polarized translation for
// cpls).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/cpl_prover.hpp"
#include "cplkit/frame.hpp"
#include "cplkit/prop.hpp"

namespace cplkit {

enum class Variant : std::uint8_t { Cpl, CplStar };

enum class NdKind : std::uint8_t { Hyp, BotE, ImpI, ImpE, DiaI, DiaE, BoxI, BoxE };

struct NDTerm;
using NDTermPtr = std::shared_ptr<const NDTerm>;

struct NDTerm {
  NdKind kind;
  int index = -1;            // Hyp
  Prop ann;                  // ImpE: argument type; DiaE/BoxE: the proposition under the modality
  WorldId world = kNoWorld;  // BotE/DiaE/BoxE: source world; DiaI: chosen successor
  NDTermPtr a, b;            // ImpI: a=body | ImpE: a=fun b=arg | BotE/DiaI: a | DiaE: a=scrutinee
                             // BoxE: a=scrutinee b=continuation (may be null)
  std::vector<std::pair<WorldId, NDTermPtr>> table;  // DiaE witness table; BoxI table
};

NDTermPtr nd_hyp(int index);
NDTermPtr nd_bot_e(NDTermPtr body, WorldId source);
NDTermPtr nd_imp_i(NDTermPtr body);
NDTermPtr nd_imp_e(Prop arg_type, NDTermPtr fun, NDTermPtr arg);
NDTermPtr nd_dia_i(WorldId chosen, NDTermPtr body);
NDTermPtr nd_dia_e(Prop body_prop, NDTermPtr scrutinee,
                   std::vector<std::pair<WorldId, NDTermPtr>> witnesses, WorldId source);
NDTermPtr nd_box_i(std::vector<std::pair<WorldId, NDTermPtr>> table);
NDTermPtr nd_box_e(Prop body_prop, NDTermPtr scrutinee, NDTermPtr continuation, WorldId source);

// Diagnostics channel: the first failing node, as a path from the root.
struct CheckDiag {
  std::string path;
  std::string reason;
};

bool check_nd(Variant variant, const Frame& frame, const Context& ctx, const NDTermPtr& term,
              const Prop& goal, WorldId world, CheckDiag* diag = nullptr);

// Substitution principle as a term operation: d proves a@w over ctx, e
// proves c@target over ctx + a@w; the result proves c@target over ctx.
// cpl requires target == w, cpls requires target to reach w
// (SideConditionError otherwise). Grafting; below the cut world,
// reflection tables are revalidated and repaired where the witness sets
// moved (SubstitutionIncompleteError when a vacuously closed node would
// need a fresh de-tethered certificate).
NDTermPtr subst_nd(Variant variant, const Frame& frame, const Context& ctx, const NDTermPtr& d,
                   const Prop& a, WorldId w, const NDTermPtr& e, const Prop& c, WorldId target);

// Re-indexes a term from ctx to ctx2 (OrderError unless ctx <=_w ctx2).
// Witness tables are reused unchanged: the order fixes judgment sets at all
// strictly reachable worlds, hence every successor-world verdict.
NDTermPtr weaken_nd(const Frame& frame, const NDTermPtr& term, const Context& ctx,
                    const Context& ctx2, WorldId world);

// Contracts the outermost introduction-eliminated redex; nullopt if none.
std::optional<NDTermPtr> reduce_redex(Variant variant, const Frame& frame, const Context& ctx,
                                      const NDTermPtr& term, const Prop& goal, WorldId world);

// One-step eta-expansion at an implication/dia/box judgment
// (UnsupportedShapeError for atoms and bot).
NDTermPtr expand_neutral(Variant variant, const Frame& frame, const Context& ctx,
                         const NDTermPtr& term, const Prop& goal, WorldId world);

// Certificate extraction from a replayable sequent proof; the result checks
// as a cpl term for the same judgment.
NDTermPtr extract_nd(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                     const CplProof& proof);

// Parenthesized text form, worlds by name; grammar in the README.
std::string print_nd(const NDTermPtr& term, const Frame& frame);
NDTermPtr parse_nd(std::string_view text, const Frame& frame);  // throws ParseError

}  // namespace cplkit
