// Shared test machinery: fixture frames, exhaustive formula enumeration,
// seeded random instances, and the structural walker for focused proofs.
#pragma once

#include <string>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/focused.hpp"
#include "cplkit/frame.hpp"
#include "cplkit/prop.hpp"
#include "cplkit/rng.hpp"

namespace testing {

using namespace cplkit;

inline Frame single_frame() { return Frame::build({"w"}, {}); }
inline Frame chain_frame() { return Frame::build({"a", "b"}, {{"a", "b"}}); }
inline Frame worked_frame() {
  return Frame::build({"alpha", "beta", "gamma"},
                      {{"alpha", "beta"}, {"alpha", "gamma"}, {"beta", "gamma"}});
}

// All formulas over atoms p, q and bot up to the given height (leaves have
// height 1); modal = false restricts to the implication fragment.
inline std::vector<Prop> enumerate_props(int max_height, bool modal = true) {
  std::vector<std::vector<Prop>> by_height(max_height + 1);
  by_height[1] = {atom("p"), atom("q"), bot()};
  std::vector<Prop> cumulative = by_height[1];
  for (int h = 2; h <= max_height; ++h) {
    std::vector<Prop> fresh;
    // implications with max child height == h-1
    for (const Prop& a : by_height[h - 1])
      for (const Prop& b : cumulative) fresh.push_back(imp(a, b));
    std::vector<Prop> shorter;
    for (int k = 1; k + 1 < h; ++k)
      for (const Prop& a : by_height[k]) shorter.push_back(a);
    for (const Prop& a : shorter)
      for (const Prop& b : by_height[h - 1]) fresh.push_back(imp(a, b));
    if (modal) {
      for (const Prop& a : by_height[h - 1]) {
        fresh.push_back(dia(a));
        fresh.push_back(box(a));
      }
    }
    by_height[h] = fresh;
    cumulative.insert(cumulative.end(), fresh.begin(), fresh.end());
  }
  return cumulative;
}

// Seeded random formula over p, q with the given height budget.
inline Prop random_prop(SplitMix64& rng, int budget, bool modal = true) {
  if (budget <= 1) {
    switch (rng.below(3)) {
      case 0: return atom("p");
      case 1: return atom("q");
      default: return bot();
    }
  }
  switch (rng.below(modal ? 4 : 2)) {
    case 0: return imp(random_prop(rng, budget - 1, modal), random_prop(rng, budget - 1, modal));
    case 1: return random_prop(rng, budget - 1, modal);
    case 2: return dia(random_prop(rng, budget - 1, modal));
    default: return box(random_prop(rng, budget - 1, modal));
  }
}

inline Context random_context(SplitMix64& rng, const Frame& frame, int max_size, int height) {
  std::vector<Judgment> items;
  int n = static_cast<int>(rng.below(max_size + 1));
  for (int i = 0; i < n; ++i)
    items.push_back(
        {random_prop(rng, height), static_cast<WorldId>(rng.below(frame.world_count()))});
  return Context(std::move(items));
}

// Structural invariants of emitted focused proofs: rule/sequent kind
// agreement, the one-judgment inversion context, and the requirement that
// loaded judgments and left foci sit in the goal world's cone.
inline bool foc_invariants_hold(const Frame& frame, const FocProof& p, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const FocSequent& s = p.sequent;
  switch (p.rule) {
    case FocRule::QRPos:
    case FocRule::DownR:
    case FocRule::DiaR:
    case FocRule::BoxR:
      if (s.kind != FocKind::RightFocus) return fail("right rule outside right focus");
      break;
    case FocRule::ImpR:
    case FocRule::UpR:
    case FocRule::DownL:
      if (s.kind != FocKind::Inversion || s.omega)
        return fail("inversion choice rule with a loaded judgment");
      break;
    case FocRule::MoveL:
    case FocRule::BotL:
    case FocRule::DiaL:
    case FocRule::BoxL:
      if (s.kind != FocKind::Inversion || !s.omega)
        return fail("loaded-inversion rule without a loaded judgment");
      break;
    case FocRule::QLNeg:
    case FocRule::UpL:
    case FocRule::ImpL:
      if (s.kind != FocKind::LeftFocus) return fail("left rule outside left focus");
      break;
  }
  if (s.kind == FocKind::Inversion && s.omega &&
      !frame.reaches_star(s.goal_world, s.omega->world))
    return fail("loaded judgment outside the goal world's cone");
  if (s.kind == FocKind::LeftFocus && !frame.reaches_star(s.goal_world, s.focus_world))
    return fail("left focus outside the goal world's cone");
  for (const auto& sub : p.subs)
    if (!foc_invariants_hold(frame, *sub, why)) return false;
  for (const auto& [w, sub] : p.table)
    if (!foc_invariants_hold(frame, *sub, why)) return false;
  return true;
}

}  // namespace testing
