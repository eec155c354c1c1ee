#include "cplkit/cpl_prover.hpp"

#include <unordered_map>
#include <unordered_set>

#include "cplkit/errors.hpp"

namespace cplkit {

namespace {

std::size_t mix(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

// Memo key. The context is projected onto the goal world's reachability
// cone: judgments at other worlds can never be consulted below this sequent,
// so projection is an exact canonicalization and lets witness sub-queries
// share entries across saturation states.
struct Key {
  Context ctx;
  Prop goal;
  WorldId world;
  std::size_t h;

  Key(const Frame& f, const Context& c, const Prop& g, WorldId w)
      : ctx(c.restrict_to(f.cone(w))), goal(g), world(w) {
    h = mix(ctx.hash(), mix(goal->hash(), world));
  }
  bool operator==(const Key& o) const {
    return world == o.world && h == o.h && prop_equal(goal, o.goal) && ctx == o.ctx;
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.h; }
};

class Prover {
 public:
  Prover(const Frame& frame, const SearchLimits& limits) : frame_(frame), limits_(limits) {}

  std::optional<CplProofPtr> decide(const Context& ctx, const Prop& goal, WorldId w) {
    if (++steps_ > limits_.max_steps)
      throw BudgetExceededError("decide_cpl exceeded its step budget");
    Key key(frame_, ctx, goal, w);
    if (auto it = provable_.find(key); it != provable_.end()) return it->second;
    if (refuted_.count(key)) return std::nullopt;
    if (stack_.count(key)) return std::nullopt;  // conditional failure, never cached

    const bool absolute = stack_.empty();
    stack_.insert(key);
    auto proof = search(ctx, goal, w);
    stack_.erase(key);

    if (proof) {
      provable_.emplace(std::move(key), *proof);
    } else if (absolute) {
      // Refutations are absolute only when nothing above could have pruned
      // the search (root and reflection sub-queries).
      refuted_.insert(std::move(key));
    }
    return proof;
  }

  // Reflection side condition: an absolute sub-query on a fresh stack.
  bool witness_provable(const Context& ctx, const Prop& body, WorldId w) {
    std::unordered_set<Key, KeyHash> saved;
    saved.swap(stack_);
    bool ok = decide(ctx, body, w).has_value();
    saved.swap(stack_);
    return ok;
  }

 private:
  std::optional<CplProofPtr> search(const Context& ctx, const Prop& goal, WorldId w) {
    auto make = [](CplProof p) { return std::make_shared<const CplProof>(std::move(p)); };

    if (is_atom(goal) && ctx.contains({goal, w}))
      return make({CplRule::Init, {goal, w}});
    if (Judgment botj{bot(), w}; ctx.contains(botj))
      return make({CplRule::BotL, botj});

    switch (goal->kind()) {
      case PropKind::Imp: {
        if (auto sub = decide(ctx.insert({goal->left(), w}), goal->right(), w))
          return make({CplRule::ImpR, {}, kNoWorld, {*sub}});
        break;
      }
      case PropKind::Dia: {
        for (WorldId next : frame_.successors(w))
          if (auto sub = decide(ctx, goal->left(), next))
            return make({CplRule::DiaR, {}, next, {*sub}});
        break;
      }
      case PropKind::Box: {
        std::vector<std::pair<WorldId, CplProofPtr>> table;
        bool all = true;
        for (WorldId next : frame_.successors(w)) {
          auto sub = decide(ctx, goal->left(), next);
          if (!sub) {
            all = false;
            break;
          }
          table.emplace_back(next, *sub);
        }
        if (all) return make({CplRule::BoxR, {}, kNoWorld, {}, std::move(table)});
        break;
      }
      default:
        break;
    }

    // Left rules, principals at the goal world, canonical context order.
    for (const Judgment& j : ctx.items()) {
      if (j.world != w) continue;
      switch (j.prop->kind()) {
        case PropKind::Imp: {
          auto arg = decide(ctx, j.prop->left(), w);
          if (!arg) break;
          auto rest = decide(ctx.insert({j.prop->right(), w}), goal, w);
          if (!rest) break;
          return make({CplRule::ImpL, j, kNoWorld, {*arg, *rest}});
        }
        case PropKind::Dia: {
          bool any_witness = false;
          for (WorldId next : frame_.successors(w))
            if (witness_provable(ctx, j.prop->left(), next)) {
              any_witness = true;
              break;
            }
          if (!any_witness) return make({CplRule::DiaL, j});
          break;  // non-vacuous: the premise is this very sequent; no power
        }
        case PropKind::Box: {
          bool all_witness = true;
          for (WorldId next : frame_.successors(w))
            if (!witness_provable(ctx, j.prop->left(), next)) {
              all_witness = false;
              break;
            }
          if (!all_witness) return make({CplRule::BoxL, j, kNoWorld, {}, {}, std::nullopt});
          break;
        }
        default:
          break;
      }
    }
    return std::nullopt;
  }

  const Frame& frame_;
  SearchLimits limits_;
  std::uint64_t steps_ = 0;
  std::unordered_map<Key, CplProofPtr, KeyHash> provable_;
  std::unordered_set<Key, KeyHash> refuted_;
  std::unordered_set<Key, KeyHash> stack_;
};

class Replayer {
 public:
  Replayer(const Frame& frame, const SequentVisitor* visitor)
      : frame_(frame), oracle_(frame, {}), visitor_(visitor) {}

  bool replay(const Context& ctx, const Prop& goal, WorldId w, const CplProof& p) {
    if (visitor_) (*visitor_)(ctx, goal, w);
    switch (p.rule) {
      case CplRule::Init:
        return is_atom(goal) && judgment_equal(p.principal, {goal, w}) && ctx.contains(p.principal);
      case CplRule::BotL:
        return is_bot(p.principal.prop) && p.principal.world == w && ctx.contains(p.principal);
      case CplRule::ImpR:
        return goal->kind() == PropKind::Imp && p.subs.size() == 1 &&
               replay(ctx.insert({goal->left(), w}), goal->right(), w, *p.subs[0]);
      case CplRule::ImpL: {
        if (p.principal.world != w || p.principal.prop->kind() != PropKind::Imp) return false;
        if (!ctx.contains(p.principal) || p.subs.size() != 2) return false;
        return replay(ctx, p.principal.prop->left(), w, *p.subs[0]) &&
               replay(ctx.insert({p.principal.prop->right(), w}), goal, w, *p.subs[1]);
      }
      case CplRule::DiaR:
        return goal->kind() == PropKind::Dia && frame_.edge(w, p.chosen) && p.subs.size() == 1 &&
               replay(ctx, goal->left(), p.chosen, *p.subs[0]);
      case CplRule::BoxR: {
        if (goal->kind() != PropKind::Box) return false;
        const auto& succ = frame_.successors(w);
        if (p.table.size() != succ.size()) return false;
        for (std::size_t i = 0; i < succ.size(); ++i) {
          if (p.table[i].first != succ[i]) return false;
          if (!replay(ctx, goal->left(), succ[i], *p.table[i].second)) return false;
        }
        return true;
      }
      case CplRule::DiaL: {
        if (p.principal.world != w || p.principal.prop->kind() != PropKind::Dia) return false;
        if (!ctx.contains(p.principal)) return false;
        std::vector<WorldId> witnesses;
        for (WorldId next : frame_.successors(w))
          if (oracle_.witness_provable(ctx, p.principal.prop->left(), next)) witnesses.push_back(next);
        if (p.table.size() != witnesses.size()) return false;
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
          if (p.table[i].first != witnesses[i]) return false;
          if (!replay(ctx, goal, w, *p.table[i].second)) return false;
        }
        return true;
      }
      case CplRule::BoxL: {
        if (p.principal.world != w || p.principal.prop->kind() != PropKind::Box) return false;
        if (!ctx.contains(p.principal)) return false;
        bool all = true;
        for (WorldId next : frame_.successors(w))
          if (!oracle_.witness_provable(ctx, p.principal.prop->left(), next)) {
            all = false;
            break;
          }
        if (all != p.cont.has_value()) return false;
        return !all || replay(ctx, goal, w, **p.cont);
      }
    }
    return false;
  }

 private:
  const Frame& frame_;
  Prover oracle_;
  const SequentVisitor* visitor_;
};

}  // namespace

ProofResult decide_cpl(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                       const SearchLimits& limits) {
  Prover prover(frame, limits);
  return {prover.decide(ctx, goal, world)};
}

bool replay_cpl(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                const CplProof& proof, const SequentVisitor* visitor) {
  return Replayer(frame, visitor).replay(ctx, goal, world, proof);
}

}  // namespace cplkit
