// Focused polarized sequent calculus for the de-tethered variant.
//
// Three sequent forms: right focus on a positive, inversion with an
// inversion context of at most one judgment, and left focus on a negative.
// Inversion with a loaded judgment is deterministic (the judgment is
// decomposed or, once stable, moved into the context); with an empty one a
// stable goal opens a choice point: focus right on an up-shifted goal, or
// focus left on any down-shifted hypothesis at a world reachable from the
// goal world. The reflection rules diaL/boxL read their higher-order
// premises as witness sets, exactly as in the tethered prover.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/cpl_prover.hpp"  // SearchLimits, ProofResult shape
#include "cplkit/frame.hpp"
#include "cplkit/polarized.hpp"

namespace cplkit {

enum class FocKind : std::uint8_t { RightFocus, Inversion, LeftFocus };

struct FocSequent {
  FocKind kind;
  PolContext ctx;
  PolProp focus;                     // RightFocus: positive; LeftFocus: negative
  WorldId focus_world = kNoWorld;    // world of the focused proposition
  std::optional<PolJudgment> omega;  // Inversion only, at most one judgment
  PolProp goal;                      // Inversion/LeftFocus: negative goal
  WorldId goal_world = kNoWorld;
};

FocSequent make_rfoc(PolContext ctx, PolProp focus, WorldId w);
FocSequent make_inv(PolContext ctx, std::optional<PolJudgment> omega, PolProp goal, WorldId w);
FocSequent make_lfoc(PolContext ctx, PolProp focus, WorldId focus_world, PolProp goal, WorldId w);

enum class FocRule : std::uint8_t {
  QRPos, DownR, DiaR, BoxR,          // right focus
  ImpR, MoveL, DownL, BotL, DiaL, BoxL, UpR,  // inversion
  QLNeg, UpL, ImpL,                  // left focus
};

struct FocProof;
using FocProofPtr = std::shared_ptr<const FocProof>;

struct FocProof {
  FocRule rule;
  FocSequent sequent;  // conclusion, kept for invariant walks
  WorldId chosen = kNoWorld;                           // DiaR successor
  std::vector<FocProofPtr> subs;                       // ordinary premises
  std::vector<std::pair<WorldId, FocProofPtr>> table;  // BoxR successors / DiaL witnesses
};

struct FocResult {
  std::optional<FocProofPtr> proof;
  bool provable() const { return proof.has_value(); }
};

// Decides a focused sequent. Validates the structural invariants first:
// stable-positive context (by construction of PolContext), loaded judgments
// and left foci at worlds reachable from the goal world, consistent atom
// polarities; throws InvariantError / PolarityClashError otherwise.
FocResult decide_foc(const Frame& frame, const FocSequent& sequent,
                     const SearchLimits& limits = {});

// Provability entry point for unpolarized input: polarizes the context and
// the goal and runs the focused decider on the inversion sequent.
FocResult prove_neg(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                    const PolarityTable& table = {}, const SearchLimits& limits = {});

}  // namespace cplkit
