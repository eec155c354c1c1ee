// Terminating decision procedure for the tethered sequent calculus, with
// replayable proof objects.
//
// Rules, backward: init (atomic goal in the context at the goal world),
// botL (bot at the goal world), impR/impL (impL keeps its principal), diaR
// (choose a successor), boxR (prove at every successor), and the
// reflection rules diaL/boxL read over witness sets: for each successor
// the side condition re-asks, with a fresh search, whether the body is
// provable there under the unchanged context. diaL closes the goal when no
// successor witnesses the body; boxL closes it when some successor refutes
// it. With a non-vacuous side condition the rules demand the conclusion
// sequent itself, so they add no power and the search skips them.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/frame.hpp"
#include "cplkit/prop.hpp"

namespace cplkit {

struct CplSequent {
  Context ctx;
  Prop goal;
  WorldId world = kNoWorld;
};

enum class CplRule : std::uint8_t { Init, BotL, ImpR, ImpL, DiaR, BoxR, DiaL, BoxL };

struct CplProof;
using CplProofPtr = std::shared_ptr<const CplProof>;

struct CplProof {
  CplRule rule;
  Judgment principal;  // Init/BotL/ImpL/DiaL/BoxL
  WorldId chosen = kNoWorld;                                    // DiaR
  std::vector<CplProofPtr> subs;                                // ImpR:1  ImpL:2  DiaR:1
  std::vector<std::pair<WorldId, CplProofPtr>> table;           // BoxR (all successors) / DiaL (witness set)
  std::optional<CplProofPtr> cont;                              // BoxL, present iff the side condition holds
};

struct ProofResult {
  std::optional<CplProofPtr> proof;
  bool provable() const { return proof.has_value(); }
};

struct SearchLimits {
  std::uint64_t max_steps = 500'000'000;  // throws BudgetExceededError beyond this
};

ProofResult decide_cpl(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                       const SearchLimits& limits = {});

// Certificate validation: true iff the tree is a valid derivation of the
// sequent, recomputing diaL/boxL witness sets with decide_cpl. The optional
// visitor sees every node's sequent (used by the sub-formula walk in tests).
using SequentVisitor = std::function<void(const Context&, const Prop&, WorldId)>;
bool replay_cpl(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                const CplProof& proof, const SequentVisitor* visitor = nullptr);

}  // namespace cplkit
