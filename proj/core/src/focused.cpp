#include "cplkit/focused.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cplkit/errors.hpp"

namespace cplkit {

namespace {

std::size_t mix(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

// The base world of a sequent: everything consulted below it lives in this
// world's reachability cone, so memo keys project the context onto it.
WorldId base_world(const FocSequent& s) {
  return s.kind == FocKind::RightFocus ? s.focus_world : s.goal_world;
}

struct Key {
  FocKind kind;
  PolContext ctx;
  PolProp focus;
  WorldId focus_world;
  bool has_omega;
  PolJudgment omega;
  PolProp goal;
  WorldId goal_world;
  std::size_t h;

  Key(const Frame& f, const FocSequent& s)
      : kind(s.kind),
        ctx(s.ctx.restrict_to(f.cone(base_world(s)))),
        focus(s.focus),
        focus_world(s.focus_world),
        has_omega(s.omega.has_value()),
        omega(s.omega ? *s.omega : PolJudgment{}),
        goal(s.goal),
        goal_world(s.goal_world) {
    h = mix(static_cast<std::size_t>(kind), ctx.hash());
    if (focus) h = mix(h, mix(focus->hash(), focus_world));
    if (has_omega) h = mix(h, mix(omega.prop->hash(), omega.world));
    if (goal) h = mix(h, mix(goal->hash(), goal_world));
  }

  bool operator==(const Key& o) const {
    if (kind != o.kind || h != o.h || focus_world != o.focus_world ||
        goal_world != o.goal_world || has_omega != o.has_omega)
      return false;
    if (static_cast<bool>(focus) != static_cast<bool>(o.focus)) return false;
    if (focus && !polprop_equal(focus, o.focus)) return false;
    if (has_omega && !pol_judgment_equal(omega, o.omega)) return false;
    if (static_cast<bool>(goal) != static_cast<bool>(o.goal)) return false;
    if (goal && !polprop_equal(goal, o.goal)) return false;
    return ctx == o.ctx;
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.h; }
};

void collect_polarities(const PolProp& p, std::map<std::string, bool>& pos_seen) {
  switch (p->kind()) {
    case PolKind::PosAtom:
    case PolKind::NegAtom: {
      bool positive = p->kind() == PolKind::PosAtom;
      auto [it, inserted] = pos_seen.emplace(p->atom_name(), positive);
      if (!inserted && it->second != positive)
        throw PolarityClashError("atom '" + p->atom_name() + "' used with both polarities");
      return;
    }
    case PolKind::PosBot:
      return;
    case PolKind::NegImp:
      collect_polarities(p->left(), pos_seen);
      collect_polarities(p->right(), pos_seen);
      return;
    default:
      collect_polarities(p->left(), pos_seen);
      return;
  }
}

class FocProver {
 public:
  FocProver(const Frame& frame, const SearchLimits& limits) : frame_(frame), limits_(limits) {}

  std::optional<FocProofPtr> decide(const FocSequent& s) {
    if (++steps_ > limits_.max_steps)
      throw BudgetExceededError("decide_foc exceeded its step budget");
    Key key(frame_, s);
    if (auto it = provable_.find(key); it != provable_.end()) return it->second;
    if (refuted_.count(key)) return std::nullopt;

    const bool neutral =
        s.kind == FocKind::Inversion && !s.omega && is_stable(s.goal);
    if (neutral && stack_.count(key)) return std::nullopt;

    const bool absolute = stack_.empty();
    if (neutral) stack_.insert(key);
    auto proof = search(s);
    if (neutral) stack_.erase(key);

    if (proof) {
      provable_.emplace(std::move(key), *proof);
    } else if (absolute) {
      refuted_.insert(std::move(key));
    }
    return proof;
  }

 private:
  std::optional<FocProofPtr> search(const FocSequent& s) {
    switch (s.kind) {
      case FocKind::RightFocus:
        return right_focus(s);
      case FocKind::Inversion:
        return s.omega ? invert_loaded(s) : invert_goal(s);
      case FocKind::LeftFocus:
        return left_focus(s);
    }
    return std::nullopt;
  }

  FocProofPtr make(FocRule rule, const FocSequent& s, WorldId chosen = kNoWorld,
                   std::vector<FocProofPtr> subs = {},
                   std::vector<std::pair<WorldId, FocProofPtr>> table = {}) const {
    return std::make_shared<const FocProof>(
        FocProof{rule, s, chosen, std::move(subs), std::move(table)});
  }

  std::optional<FocProofPtr> right_focus(const FocSequent& s) {
    const PolProp& p = s.focus;
    const WorldId w = s.focus_world;
    switch (p->kind()) {
      case PolKind::PosAtom:
        if (s.ctx.contains({p, w})) return make(FocRule::QRPos, s);
        return std::nullopt;
      case PolKind::Down: {
        if (auto sub = decide(make_inv(s.ctx, std::nullopt, p->left(), w)))
          return make(FocRule::DownR, s, kNoWorld, {*sub});
        return std::nullopt;
      }
      case PolKind::PosBot:
        return std::nullopt;  // no right rule for bot
      case PolKind::PosDia: {
        for (WorldId next : frame_.successors(w))
          if (auto sub = decide(make_inv(s.ctx, std::nullopt, up(p->left()), next)))
            return make(FocRule::DiaR, s, next, {*sub});
        return std::nullopt;
      }
      case PolKind::PosBox: {
        std::vector<std::pair<WorldId, FocProofPtr>> table;
        for (WorldId next : frame_.successors(w)) {
          auto sub = decide(make_inv(s.ctx, std::nullopt, up(p->left()), next));
          if (!sub) return std::nullopt;
          table.emplace_back(next, *sub);
        }
        return make(FocRule::BoxR, s, kNoWorld, {}, std::move(table));
      }
      default:
        throw InvariantError("negative proposition under right focus");
    }
  }

  // Inversion with a loaded judgment: exactly one rule applies.
  std::optional<FocProofPtr> invert_loaded(const FocSequent& s) {
    const PolJudgment& om = *s.omega;
    switch (om.prop->kind()) {
      case PolKind::PosAtom:
      case PolKind::Down: {
        if (auto sub = decide(make_inv(s.ctx.insert(om), std::nullopt, s.goal, s.goal_world)))
          return make(FocRule::MoveL, s, kNoWorld, {*sub});
        return std::nullopt;
      }
      case PolKind::PosBot:
        return make(FocRule::BotL, s);
      case PolKind::PosDia: {
        std::vector<WorldId> witnesses;
        for (WorldId next : frame_.successors(om.world))
          if (witness_provable(s.ctx, om.prop->left(), next)) witnesses.push_back(next);
        if (witnesses.empty()) return make(FocRule::DiaL, s);
        auto sub = decide(make_inv(s.ctx, std::nullopt, s.goal, s.goal_world));
        if (!sub) return std::nullopt;
        std::vector<std::pair<WorldId, FocProofPtr>> table;
        for (WorldId x : witnesses) table.emplace_back(x, *sub);
        return make(FocRule::DiaL, s, kNoWorld, {}, std::move(table));
      }
      case PolKind::PosBox: {
        bool all = true;
        for (WorldId next : frame_.successors(om.world))
          if (!witness_provable(s.ctx, om.prop->left(), next)) {
            all = false;
            break;
          }
        if (!all) return make(FocRule::BoxL, s);
        if (auto sub = decide(make_inv(s.ctx, std::nullopt, s.goal, s.goal_world)))
          return make(FocRule::BoxL, s, kNoWorld, {*sub});
        return std::nullopt;
      }
      default:
        throw InvariantError("negative proposition loaded for inversion");
    }
  }

  // Inversion, empty inversion context.
  std::optional<FocProofPtr> invert_goal(const FocSequent& s) {
    const PolProp& goal = s.goal;
    const WorldId w = s.goal_world;
    if (goal->kind() == PolKind::NegImp) {
      PolJudgment om{goal->left(), w};
      if (auto sub = decide(make_inv(s.ctx, om, goal->right(), w)))
        return make(FocRule::ImpR, s, kNoWorld, {*sub});
      return std::nullopt;
    }

    // Neutral sequent: choice points, up-shift first, then left foci in
    // canonical context order.
    if (goal->kind() == PolKind::Up) {
      FocSequent rf = make_rfoc(s.ctx, goal->left(), w);
      if (auto sub = decide(rf)) return make(FocRule::UpR, s, kNoWorld, {*sub});
    }
    for (const PolJudgment& j : s.ctx.items()) {
      if (j.prop->kind() != PolKind::Down) continue;
      if (!frame_.reaches_star(w, j.world)) continue;
      if (auto sub = decide(make_lfoc(s.ctx, j.prop->left(), j.world, goal, w)))
        return make(FocRule::DownL, s, kNoWorld, {*sub});
    }
    return std::nullopt;
  }

  std::optional<FocProofPtr> left_focus(const FocSequent& s) {
    const PolProp& p = s.focus;
    const WorldId wp = s.focus_world;
    switch (p->kind()) {
      case PolKind::NegAtom:
        if (wp == s.goal_world && polprop_equal(p, s.goal)) return make(FocRule::QLNeg, s);
        return std::nullopt;
      case PolKind::Up: {
        PolJudgment om{p->left(), wp};
        if (auto sub = decide(make_inv(s.ctx, om, s.goal, s.goal_world)))
          return make(FocRule::UpL, s, kNoWorld, {*sub});
        return std::nullopt;
      }
      case PolKind::NegImp: {
        auto arg = decide(make_rfoc(s.ctx, p->left(), wp));
        if (!arg) return std::nullopt;
        auto rest = decide(make_lfoc(s.ctx, p->right(), wp, s.goal, s.goal_world));
        if (!rest) return std::nullopt;
        return make(FocRule::ImpL, s, kNoWorld, {*arg, *rest});
      }
      default:
        throw InvariantError("positive proposition under left focus");
    }
  }

  bool witness_provable(const PolContext& ctx, const PolProp& body, WorldId w) {
    std::unordered_set<Key, KeyHash> saved;
    saved.swap(stack_);
    bool ok = decide(make_inv(ctx, std::nullopt, up(body), w)).has_value();
    saved.swap(stack_);
    return ok;
  }

  const Frame& frame_;
  SearchLimits limits_;
  std::uint64_t steps_ = 0;
  std::unordered_map<Key, FocProofPtr, KeyHash> provable_;
  std::unordered_set<Key, KeyHash> refuted_;
  std::unordered_set<Key, KeyHash> stack_;
};

void validate_sequent(const Frame& frame, const FocSequent& s) {
  std::map<std::string, bool> polarities;
  for (const auto& j : s.ctx.items()) collect_polarities(j.prop, polarities);
  switch (s.kind) {
    case FocKind::RightFocus:
      if (!s.focus || !is_positive(s.focus)) throw InvariantError("right focus needs a positive");
      collect_polarities(s.focus, polarities);
      break;
    case FocKind::Inversion:
      if (!s.goal || is_positive(s.goal)) throw InvariantError("inversion goal must be negative");
      collect_polarities(s.goal, polarities);
      if (s.omega) {
        if (!is_positive(s.omega->prop))
          throw InvariantError("inversion context holds positives only");
        collect_polarities(s.omega->prop, polarities);
        if (!frame.reaches_star(s.goal_world, s.omega->world))
          throw InvariantError("loaded judgment outside the goal world's cone");
      }
      break;
    case FocKind::LeftFocus:
      if (!s.focus || is_positive(s.focus)) throw InvariantError("left focus needs a negative");
      if (!s.goal || is_positive(s.goal)) throw InvariantError("left-focus goal must be negative");
      collect_polarities(s.focus, polarities);
      collect_polarities(s.goal, polarities);
      if (!frame.reaches_star(s.goal_world, s.focus_world))
        throw InvariantError("left focus outside the goal world's cone");
      break;
  }
}

}  // namespace

FocSequent make_rfoc(PolContext ctx, PolProp focus, WorldId w) {
  FocSequent s;
  s.kind = FocKind::RightFocus;
  s.ctx = std::move(ctx);
  s.focus = std::move(focus);
  s.focus_world = w;
  return s;
}

FocSequent make_inv(PolContext ctx, std::optional<PolJudgment> omega, PolProp goal, WorldId w) {
  FocSequent s;
  s.kind = FocKind::Inversion;
  s.ctx = std::move(ctx);
  s.omega = std::move(omega);
  s.goal = std::move(goal);
  s.goal_world = w;
  return s;
}

FocSequent make_lfoc(PolContext ctx, PolProp focus, WorldId focus_world, PolProp goal, WorldId w) {
  FocSequent s;
  s.kind = FocKind::LeftFocus;
  s.ctx = std::move(ctx);
  s.focus = std::move(focus);
  s.focus_world = focus_world;
  s.goal = std::move(goal);
  s.goal_world = w;
  return s;
}

FocResult decide_foc(const Frame& frame, const FocSequent& sequent, const SearchLimits& limits) {
  validate_sequent(frame, sequent);
  FocProver prover(frame, limits);
  return {prover.decide(sequent)};
}

FocResult prove_neg(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                    const PolarityTable& table, const SearchLimits& limits) {
  PolContext pctx = polarize_ctx(ctx, table);
  PolProp pgoal = polarize(goal, PolarizeMode::Neg, table);
  return decide_foc(frame, make_inv(std::move(pctx), std::nullopt, std::move(pgoal), world), limits);
}

}  // namespace cplkit
