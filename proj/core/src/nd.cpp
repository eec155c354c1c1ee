#include "cplkit/nd.hpp"

#include <algorithm>

#include "cplkit/errors.hpp"
#include "cplkit/focused.hpp"
#include "cplkit/text.hpp"

namespace cplkit {

namespace {

NDTermPtr make(NDTerm t) { return std::make_shared<const NDTerm>(std::move(t)); }

bool oracle_provable(Variant variant, const Frame& frame, const Context& ctx, const Prop& p,
                     WorldId w) {
  if (variant == Variant::Cpl) return decide_cpl(frame, ctx, p, w).provable();
  return prove_neg(frame, ctx, p, w).provable();
}

// ---------------------------------------------------------------------------
// Checking. Contexts are handled as a list: the canonical base followed by
// bound judgments in binding order; Hyp indices are positions in that list.

class Checker {
 public:
  Checker(Variant variant, const Frame& frame, const Context& base, CheckDiag* diag)
      : variant_(variant), frame_(frame), diag_(diag) {
    list_ = base.items();
  }

  bool check(const NDTermPtr& t, const Prop& goal, WorldId w, const std::string& path) {
    if (!t) return fail(path, "missing subterm");
    switch (t->kind) {
      case NdKind::Hyp: {
        if (t->index < 0 || t->index >= static_cast<int>(list_.size()))
          return fail(path, "hypothesis index out of range");
        const Judgment& j = list_[t->index];
        if (j.world != w || !prop_equal(j.prop, goal))
          return fail(path, "hypothesis does not match the goal judgment");
        return true;
      }
      case NdKind::BotE: {
        if (!world_ok(t->world, w)) return fail(path, "source world breaks the side condition");
        return check(t->a, bot(), t->world, path + ".body");
      }
      case NdKind::ImpI: {
        if (goal->kind() != PropKind::Imp) return fail(path, "imp-i against a non-implication");
        list_.push_back({goal->left(), w});
        bool ok = check(t->a, goal->right(), w, path + ".body");
        list_.pop_back();
        return ok;
      }
      case NdKind::ImpE: {
        if (!t->ann) return fail(path, "imp-e missing its argument type");
        return check(t->a, imp(t->ann, goal), w, path + ".fun") &&
               check(t->b, t->ann, w, path + ".arg");
      }
      case NdKind::DiaI: {
        if (goal->kind() != PropKind::Dia) return fail(path, "dia-i against a non-dia goal");
        if (!frame_.edge(w, t->world)) return fail(path, "chosen world is not a successor");
        return check(t->a, goal->left(), t->world, path + ".body");
      }
      case NdKind::DiaE: {
        if (!t->ann) return fail(path, "dia-e missing its body proposition");
        if (!world_ok(t->world, w)) return fail(path, "source world breaks the side condition");
        if (!check(t->a, dia(t->ann), t->world, path + ".scrutinee")) return false;
        std::vector<WorldId> witnesses = witness_set(t->ann, t->world);
        if (!table_domain_matches(t->table, witnesses))
          return fail(path, "witness table does not cover the witness set");
        for (const auto& [wit, sub] : t->table)
          if (!check(sub, goal, w, path + ".table[" + frame_.name(wit) + "]")) return false;
        return true;
      }
      case NdKind::BoxI: {
        if (goal->kind() != PropKind::Box) return fail(path, "box-i against a non-box goal");
        const auto& succ = frame_.successors(w);
        if (t->table.size() != succ.size()) return fail(path, "box-i table is not total");
        for (std::size_t i = 0; i < succ.size(); ++i) {
          if (t->table[i].first != succ[i]) return fail(path, "box-i table is not total");
          if (!check(t->table[i].second, goal->left(), succ[i],
                     path + ".table[" + frame_.name(succ[i]) + "]"))
            return false;
        }
        return true;
      }
      case NdKind::BoxE: {
        if (!t->ann) return fail(path, "box-e missing its body proposition");
        if (!world_ok(t->world, w)) return fail(path, "source world breaks the side condition");
        if (!check(t->a, box(t->ann), t->world, path + ".scrutinee")) return false;
        bool holds = all_successors_provable(t->ann, t->world);
        if (holds != static_cast<bool>(t->b))
          return fail(path, holds ? "missing continuation for a non-vacuous box-e"
                                  : "continuation on a vacuously discharged box-e");
        return !holds || check(t->b, goal, w, path + ".cont");
      }
    }
    return fail(path, "unknown node");
  }

  std::vector<WorldId> witness_set(const Prop& body, WorldId source) {
    Context full(list_);
    std::vector<WorldId> out;
    for (WorldId next : frame_.successors(source))
      if (oracle_provable(variant_, frame_, full, body, next)) out.push_back(next);
    return out;
  }

  bool all_successors_provable(const Prop& body, WorldId source) {
    Context full(list_);
    for (WorldId next : frame_.successors(source))
      if (!oracle_provable(variant_, frame_, full, body, next)) return false;
    return true;
  }

 private:
  bool world_ok(WorldId source, WorldId conclusion) const {
    if (source >= frame_.world_count()) return false;
    if (variant_ == Variant::Cpl) return source == conclusion;
    return frame_.reaches_star(conclusion, source);
  }

  static bool table_domain_matches(const std::vector<std::pair<WorldId, NDTermPtr>>& table,
                                   const std::vector<WorldId>& witnesses) {
    if (table.size() != witnesses.size()) return false;
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i].first != witnesses[i]) return false;
    return true;
  }

  bool fail(const std::string& path, const std::string& reason) {
    if (diag_ && diag_->reason.empty()) {
      diag_->path = path;
      diag_->reason = reason;
    }
    return false;
  }

  Variant variant_;
  const Frame& frame_;
  std::vector<Judgment> list_;
  CheckDiag* diag_;
};

// ---------------------------------------------------------------------------
// Index surgery.

// i < base_map.size(): canonical base position, remapped (or spliced when
// base_map[i] == -2, see subst_at); i beyond the base shifts by bound_delta.
NDTermPtr remap_indices(const NDTermPtr& t, const std::vector<int>& base_map, int bound_delta) {
  switch (t->kind) {
    case NdKind::Hyp: {
      int i = t->index;
      int j;
      if (i < static_cast<int>(base_map.size())) {
        j = base_map[i];
        if (j < 0) throw InvariantError("re-indexing dropped a used hypothesis");
      } else {
        j = i + bound_delta;
      }
      return j == i ? t : nd_hyp(j);
    }
    case NdKind::BotE:
      return nd_bot_e(remap_indices(t->a, base_map, bound_delta), t->world);
    case NdKind::ImpI:
      return nd_imp_i(remap_indices(t->a, base_map, bound_delta));
    case NdKind::ImpE:
      return nd_imp_e(t->ann, remap_indices(t->a, base_map, bound_delta),
                      remap_indices(t->b, base_map, bound_delta));
    case NdKind::DiaI:
      return nd_dia_i(t->world, remap_indices(t->a, base_map, bound_delta));
    case NdKind::DiaE: {
      std::vector<std::pair<WorldId, NDTermPtr>> table;
      table.reserve(t->table.size());
      for (const auto& [w, sub] : t->table)
        table.emplace_back(w, remap_indices(sub, base_map, bound_delta));
      return nd_dia_e(t->ann, remap_indices(t->a, base_map, bound_delta), std::move(table),
                      t->world);
    }
    case NdKind::BoxI: {
      std::vector<std::pair<WorldId, NDTermPtr>> table;
      table.reserve(t->table.size());
      for (const auto& [w, sub] : t->table)
        table.emplace_back(w, remap_indices(sub, base_map, bound_delta));
      return nd_box_i(std::move(table));
    }
    case NdKind::BoxE:
      return nd_box_e(t->ann, remap_indices(t->a, base_map, bound_delta),
                      t->b ? remap_indices(t->b, base_map, bound_delta) : nullptr, t->world);
  }
  throw InvariantError("unknown node");
}

// Replaces position `cut` by d (spliced verbatim) and shifts higher
// positions down by one.
NDTermPtr subst_at(const NDTermPtr& e, int cut, const NDTermPtr& d) {
  switch (e->kind) {
    case NdKind::Hyp:
      if (e->index == cut) return d;
      if (e->index > cut) return nd_hyp(e->index - 1);
      return e;
    case NdKind::BotE:
      return nd_bot_e(subst_at(e->a, cut, d), e->world);
    case NdKind::ImpI:
      return nd_imp_i(subst_at(e->a, cut, d));
    case NdKind::ImpE:
      return nd_imp_e(e->ann, subst_at(e->a, cut, d), subst_at(e->b, cut, d));
    case NdKind::DiaI:
      return nd_dia_i(e->world, subst_at(e->a, cut, d));
    case NdKind::DiaE: {
      std::vector<std::pair<WorldId, NDTermPtr>> table;
      table.reserve(e->table.size());
      for (const auto& [w, sub] : e->table) table.emplace_back(w, subst_at(sub, cut, d));
      return nd_dia_e(e->ann, subst_at(e->a, cut, d), std::move(table), e->world);
    }
    case NdKind::BoxI: {
      std::vector<std::pair<WorldId, NDTermPtr>> table;
      table.reserve(e->table.size());
      for (const auto& [w, sub] : e->table) table.emplace_back(w, subst_at(sub, cut, d));
      return nd_box_i(std::move(table));
    }
    case NdKind::BoxE:
      return nd_box_e(e->ann, subst_at(e->a, cut, d), e->b ? subst_at(e->b, cut, d) : nullptr,
                      e->world);
  }
  throw InvariantError("unknown node");
}

// Converts a term over canonical(base + j) into the binder layout
// base.items() ++ [j].
NDTermPtr into_binder_layout(const Context& base, const Judgment& j, const NDTermPtr& body) {
  const int n0 = static_cast<int>(base.size());
  Context full = base.insert(j);
  if (full.size() == base.size()) {
    std::vector<int> identity(n0);
    for (int i = 0; i < n0; ++i) identity[i] = i;
    return remap_indices(body, identity, +1);
  }
  const int k = full.index_of(j);
  std::vector<int> base_map(full.size());
  for (int i = 0; i < static_cast<int>(full.size()); ++i)
    base_map[i] = (i < k) ? i : (i == k ? n0 : i - 1);
  return remap_indices(body, base_map, 0);
}

// ---------------------------------------------------------------------------
// Repair walk for substitution below the cut world: witness sets can move
// once the cut hypothesis is gone, so reflection nodes are re-validated and
// their tables rebuilt. Continuations all prove the node's own judgment, so
// a surviving sibling can stand in for a new witness; a vacuously closed
// node that turns non-vacuous would need a certificate we cannot extract in
// the de-tethered variant, and raises instead.
class Repairer {
 public:
  Repairer(Variant variant, const Frame& frame, const Context& base)
      : variant_(variant), frame_(frame) {
    list_ = base.items();
  }

  NDTermPtr go(const NDTermPtr& t, const Prop& goal, WorldId w) {
    switch (t->kind) {
      case NdKind::Hyp:
        return t;
      case NdKind::BotE:
        return nd_bot_e(go(t->a, bot(), t->world), t->world);
      case NdKind::ImpI: {
        if (goal->kind() != PropKind::Imp) throw InvariantError("repair: imp-i shape mismatch");
        list_.push_back({goal->left(), w});
        NDTermPtr body = go(t->a, goal->right(), w);
        list_.pop_back();
        return nd_imp_i(std::move(body));
      }
      case NdKind::ImpE:
        return nd_imp_e(t->ann, go(t->a, imp(t->ann, goal), w), go(t->b, t->ann, w));
      case NdKind::DiaI:
        if (goal->kind() != PropKind::Dia) throw InvariantError("repair: dia-i shape mismatch");
        return nd_dia_i(t->world, go(t->a, goal->left(), t->world));
      case NdKind::DiaE: {
        NDTermPtr scrut = go(t->a, dia(t->ann), t->world);
        Context full(list_);
        std::vector<std::pair<WorldId, NDTermPtr>> table;
        for (WorldId next : frame_.successors(t->world)) {
          if (!oracle_provable(variant_, frame_, full, t->ann, next)) continue;
          const NDTermPtr* old = lookup(t->table, next);
          if (!old && !t->table.empty()) old = &t->table.front().second;
          if (!old)
            throw SubstitutionIncompleteError(
                "substitution re-opened a vacuously discharged dia-e");
          table.emplace_back(next, go(*old, goal, w));
        }
        return nd_dia_e(t->ann, std::move(scrut), std::move(table), t->world);
      }
      case NdKind::BoxI: {
        if (goal->kind() != PropKind::Box) throw InvariantError("repair: box-i shape mismatch");
        std::vector<std::pair<WorldId, NDTermPtr>> table;
        for (const auto& [next, sub] : t->table)
          table.emplace_back(next, go(sub, goal->left(), next));
        return nd_box_i(std::move(table));
      }
      case NdKind::BoxE: {
        NDTermPtr scrut = go(t->a, box(t->ann), t->world);
        Context full(list_);
        bool holds = true;
        for (WorldId next : frame_.successors(t->world))
          if (!oracle_provable(variant_, frame_, full, t->ann, next)) {
            holds = false;
            break;
          }
        NDTermPtr cont;
        if (holds) {
          if (!t->b)
            throw SubstitutionIncompleteError(
                "substitution re-opened a vacuously discharged box-e");
          cont = go(t->b, goal, w);
        }
        return nd_box_e(t->ann, std::move(scrut), std::move(cont), t->world);
      }
    }
    throw InvariantError("unknown node");
  }

 private:
  static const NDTermPtr* lookup(const std::vector<std::pair<WorldId, NDTermPtr>>& table,
                                 WorldId w) {
    for (const auto& [key, value] : table)
      if (key == w) return &value;
    return nullptr;
  }

  Variant variant_;
  const Frame& frame_;
  std::vector<Judgment> list_;
};

// ---------------------------------------------------------------------------
// Extraction.

class Extractor {
 public:
  explicit Extractor(const Frame& frame) : frame_(frame) {}

  NDTermPtr extract(const Context& ctx, const Prop& goal, WorldId w, const CplProof& p) {
    switch (p.rule) {
      case CplRule::Init:
        return nd_hyp(ctx.index_of({goal, w}));
      case CplRule::BotL:
        return nd_bot_e(nd_hyp(ctx.index_of({bot(), w})), w);
      case CplRule::ImpR: {
        Judgment bound{goal->left(), w};
        Context full = ctx.insert(bound);
        NDTermPtr body = extract(full, goal->right(), w, *p.subs[0]);
        return nd_imp_i(into_binder_layout(ctx, bound, body));
      }
      case CplRule::ImpL: {
        const Prop& arg_type = p.principal.prop->left();
        const Prop& result = p.principal.prop->right();
        NDTermPtr arg = extract(ctx, arg_type, w, *p.subs[0]);
        NDTermPtr d = nd_imp_e(arg_type, nd_hyp(ctx.index_of(p.principal)), std::move(arg));
        Judgment cut{result, w};
        Context full = ctx.insert(cut);
        NDTermPtr cont = extract(full, goal, w, *p.subs[1]);
        if (full.size() == ctx.size()) return cont;  // result already in ctx
        return subst_at(cont, full.index_of(cut), d);
      }
      case CplRule::DiaR:
        return nd_dia_i(p.chosen, extract(ctx, goal->left(), p.chosen, *p.subs[0]));
      case CplRule::BoxR: {
        std::vector<std::pair<WorldId, NDTermPtr>> table;
        for (const auto& [next, sub] : p.table)
          table.emplace_back(next, extract(ctx, goal->left(), next, *sub));
        return nd_box_i(std::move(table));
      }
      case CplRule::DiaL: {
        std::vector<std::pair<WorldId, NDTermPtr>> table;
        for (const auto& [next, sub] : p.table)
          table.emplace_back(next, extract(ctx, goal, w, *sub));
        return nd_dia_e(p.principal.prop->left(), nd_hyp(ctx.index_of(p.principal)),
                        std::move(table), w);
      }
      case CplRule::BoxL: {
        NDTermPtr cont = p.cont ? extract(ctx, goal, w, **p.cont) : nullptr;
        return nd_box_e(p.principal.prop->left(), nd_hyp(ctx.index_of(p.principal)),
                        std::move(cont), w);
      }
    }
    throw InvariantError("unknown sequent rule");
  }

 private:
  const Frame& frame_;
};

// ---------------------------------------------------------------------------
// Reduction and expansion.

std::optional<NDTermPtr> reduce_at(const NDTermPtr& t, int prefix_len) {
  if (t->kind == NdKind::ImpE && t->a->kind == NdKind::ImpI)
    return subst_at(t->a->a, prefix_len, t->b);
  if (t->kind == NdKind::DiaE && t->a->kind == NdKind::DiaI) {
    for (const auto& [w, sub] : t->table)
      if (w == t->a->world) return sub;
    throw InvariantError("dia redex without a continuation for its witness");
  }
  if (t->kind == NdKind::BoxE && t->a->kind == NdKind::BoxI) {
    if (!t->b) throw InvariantError("box redex without a continuation");
    return t->b;
  }

  auto descend = [&](const NDTermPtr& child, int child_prefix,
                     auto rebuild) -> std::optional<NDTermPtr> {
    if (!child) return std::nullopt;
    if (auto reduced = reduce_at(child, child_prefix)) return rebuild(*reduced);
    return std::nullopt;
  };

  switch (t->kind) {
    case NdKind::Hyp:
      return std::nullopt;
    case NdKind::BotE:
      return descend(t->a, prefix_len,
                     [&](NDTermPtr r) { return nd_bot_e(std::move(r), t->world); });
    case NdKind::ImpI:
      return descend(t->a, prefix_len + 1, [&](NDTermPtr r) { return nd_imp_i(std::move(r)); });
    case NdKind::ImpE:
      if (auto r = descend(t->a, prefix_len,
                           [&](NDTermPtr r) { return nd_imp_e(t->ann, std::move(r), t->b); }))
        return r;
      return descend(t->b, prefix_len,
                     [&](NDTermPtr r) { return nd_imp_e(t->ann, t->a, std::move(r)); });
    case NdKind::DiaI:
      return descend(t->a, prefix_len,
                     [&](NDTermPtr r) { return nd_dia_i(t->world, std::move(r)); });
    case NdKind::DiaE: {
      if (auto r = descend(t->a, prefix_len, [&](NDTermPtr r) {
            return nd_dia_e(t->ann, std::move(r), t->table, t->world);
          }))
        return r;
      for (std::size_t i = 0; i < t->table.size(); ++i) {
        if (auto reduced = reduce_at(t->table[i].second, prefix_len)) {
          auto table = t->table;
          table[i].second = *reduced;
          return nd_dia_e(t->ann, t->a, std::move(table), t->world);
        }
      }
      return std::nullopt;
    }
    case NdKind::BoxI: {
      for (std::size_t i = 0; i < t->table.size(); ++i) {
        if (auto reduced = reduce_at(t->table[i].second, prefix_len)) {
          auto table = t->table;
          table[i].second = *reduced;
          return nd_box_i(std::move(table));
        }
      }
      return std::nullopt;
    }
    case NdKind::BoxE:
      if (auto r = descend(t->a, prefix_len, [&](NDTermPtr r) {
            return nd_box_e(t->ann, std::move(r), t->b, t->world);
          }))
        return r;
      return descend(t->b, prefix_len,
                     [&](NDTermPtr r) { return nd_box_e(t->ann, t->a, std::move(r), t->world); });
  }
  return std::nullopt;
}

// Certificate for a witness fact, used by the expansions. The tethered
// variant extracts directly; the de-tethered one reuses a tethered
// certificate when it survives the de-tethered check, and otherwise signals
// the caller to fall back to the scrutinee.
NDTermPtr witness_certificate(Variant variant, const Frame& frame, const Context& ctx,
                              const Prop& body, WorldId w) {
  auto result = decide_cpl(frame, ctx, body, w);
  if (!result.provable()) return nullptr;
  NDTermPtr cert = extract_nd(frame, ctx, body, w, **result.proof);
  if (variant == Variant::Cpl) return cert;
  if (check_nd(Variant::CplStar, frame, ctx, cert, body, w)) return cert;
  return nullptr;
}

}  // namespace

NDTermPtr nd_hyp(int index) { return make({NdKind::Hyp, index}); }

NDTermPtr nd_bot_e(NDTermPtr body, WorldId source) {
  return make({NdKind::BotE, -1, nullptr, source, std::move(body)});
}

NDTermPtr nd_imp_i(NDTermPtr body) {
  return make({NdKind::ImpI, -1, nullptr, kNoWorld, std::move(body)});
}

NDTermPtr nd_imp_e(Prop arg_type, NDTermPtr fun, NDTermPtr arg) {
  return make({NdKind::ImpE, -1, std::move(arg_type), kNoWorld, std::move(fun), std::move(arg)});
}

NDTermPtr nd_dia_i(WorldId chosen, NDTermPtr body) {
  return make({NdKind::DiaI, -1, nullptr, chosen, std::move(body)});
}

NDTermPtr nd_dia_e(Prop body_prop, NDTermPtr scrutinee,
                   std::vector<std::pair<WorldId, NDTermPtr>> witnesses, WorldId source) {
  return make({NdKind::DiaE, -1, std::move(body_prop), source, std::move(scrutinee), nullptr,
               std::move(witnesses)});
}

NDTermPtr nd_box_i(std::vector<std::pair<WorldId, NDTermPtr>> table) {
  return make({NdKind::BoxI, -1, nullptr, kNoWorld, nullptr, nullptr, std::move(table)});
}

NDTermPtr nd_box_e(Prop body_prop, NDTermPtr scrutinee, NDTermPtr continuation, WorldId source) {
  return make({NdKind::BoxE, -1, std::move(body_prop), source, std::move(scrutinee),
               std::move(continuation)});
}

bool check_nd(Variant variant, const Frame& frame, const Context& ctx, const NDTermPtr& term,
              const Prop& goal, WorldId world, CheckDiag* diag) {
  return Checker(variant, frame, ctx, diag).check(term, goal, world, "root");
}

NDTermPtr subst_nd(Variant variant, const Frame& frame, const Context& ctx, const NDTermPtr& d,
                   const Prop& a, WorldId w, const NDTermPtr& e, const Prop& c, WorldId target) {
  if (variant == Variant::Cpl) {
    if (target != w) throw SideConditionError("tethered substitution requires target == w");
  } else if (!frame.reaches_star(target, w)) {
    throw SideConditionError("substitution target world cannot reach the cut world");
  }
  Judgment cut{a, w};
  if (ctx.contains(cut)) return e;  // the union added nothing
  Context full = ctx.insert(cut);
  NDTermPtr out = subst_at(e, full.index_of(cut), d);
  if (variant == Variant::CplStar && target != w)
    out = Repairer(variant, frame, ctx).go(out, c, target);
  return out;
}

NDTermPtr weaken_nd(const Frame& frame, const NDTermPtr& term, const Context& ctx,
                    const Context& ctx2, WorldId world) {
  if (!ctx_leq(frame, ctx, ctx2, world))
    throw OrderError("contexts are not related by the world-indexed order");
  std::vector<int> base_map(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) base_map[i] = ctx2.index_of(ctx.items()[i]);
  int bound_delta = static_cast<int>(ctx2.size()) - static_cast<int>(ctx.size());
  return remap_indices(term, base_map, bound_delta);
}

std::optional<NDTermPtr> reduce_redex(Variant, const Frame&, const Context& ctx,
                                      const NDTermPtr& term, const Prop&, WorldId) {
  return reduce_at(term, static_cast<int>(ctx.size()));
}

NDTermPtr expand_neutral(Variant variant, const Frame& frame, const Context& ctx,
                         const NDTermPtr& term, const Prop& goal, WorldId world) {
  switch (goal->kind()) {
    case PropKind::Imp: {
      // The binder layout leaves existing indices untouched, so the
      // weakening step is the identity re-map.
      NDTermPtr weakened = weaken_nd(frame, term, ctx, ctx, world);
      NDTermPtr app =
          nd_imp_e(goal->left(), std::move(weakened), nd_hyp(static_cast<int>(ctx.size())));
      return nd_imp_i(std::move(app));
    }
    case PropKind::Dia: {
      const Prop& body = goal->left();
      std::vector<std::pair<WorldId, NDTermPtr>> table;
      for (WorldId next : frame.successors(world)) {
        if (!oracle_provable(variant, frame, ctx, body, next)) continue;
        NDTermPtr cert = witness_certificate(variant, frame, ctx, body, next);
        table.emplace_back(next, cert ? nd_dia_i(next, std::move(cert)) : term);
      }
      return nd_dia_e(body, term, std::move(table), world);
    }
    case PropKind::Box: {
      const Prop& body = goal->left();
      bool holds = true;
      std::vector<std::pair<WorldId, NDTermPtr>> certs;
      for (WorldId next : frame.successors(world)) {
        if (!oracle_provable(variant, frame, ctx, body, next)) {
          holds = false;
          break;
        }
        certs.emplace_back(next, witness_certificate(variant, frame, ctx, body, next));
      }
      if (!holds) return nd_box_e(body, term, nullptr, world);
      bool complete = std::all_of(certs.begin(), certs.end(),
                                  [](const auto& e) { return e.second != nullptr; });
      NDTermPtr cont = complete ? nd_box_i(std::move(certs)) : term;
      return nd_box_e(body, term, std::move(cont), world);
    }
    default:
      throw UnsupportedShapeError("expansion applies to implications, dia and box only");
  }
}

NDTermPtr extract_nd(const Frame& frame, const Context& ctx, const Prop& goal, WorldId world,
                     const CplProof& proof) {
  return Extractor(frame).extract(ctx, goal, world, proof);
}

// ---------------------------------------------------------------------------
// Text form: one parenthesized constructor per node, worlds by name,
// proposition annotations in braces.

namespace {

void print_term(const NDTermPtr& t, const Frame& f, std::string& out) {
  switch (t->kind) {
    case NdKind::Hyp:
      out += "(hyp " + std::to_string(t->index) + ")";
      return;
    case NdKind::BotE:
      out += "(bot-e " + f.name(t->world) + " ";
      print_term(t->a, f, out);
      out += ")";
      return;
    case NdKind::ImpI:
      out += "(imp-i ";
      print_term(t->a, f, out);
      out += ")";
      return;
    case NdKind::ImpE:
      out += "(imp-e {" + print_prop(t->ann) + "} ";
      print_term(t->a, f, out);
      out += " ";
      print_term(t->b, f, out);
      out += ")";
      return;
    case NdKind::DiaI:
      out += "(dia-i " + f.name(t->world) + " ";
      print_term(t->a, f, out);
      out += ")";
      return;
    case NdKind::DiaE: {
      out += "(dia-e {" + print_prop(t->ann) + "} " + f.name(t->world) + " ";
      print_term(t->a, f, out);
      out += " (";
      for (std::size_t i = 0; i < t->table.size(); ++i) {
        if (i) out += " ";
        out += "(" + f.name(t->table[i].first) + " ";
        print_term(t->table[i].second, f, out);
        out += ")";
      }
      out += "))";
      return;
    }
    case NdKind::BoxI: {
      out += "(box-i (";
      for (std::size_t i = 0; i < t->table.size(); ++i) {
        if (i) out += " ";
        out += "(" + f.name(t->table[i].first) + " ";
        print_term(t->table[i].second, f, out);
        out += ")";
      }
      out += "))";
      return;
    }
    case NdKind::BoxE:
      out += "(box-e {" + print_prop(t->ann) + "} " + f.name(t->world) + " ";
      print_term(t->a, f, out);
      if (t->b) {
        out += " ";
        print_term(t->b, f, out);
      }
      out += ")";
      return;
  }
}

class NdParser {
 public:
  NdParser(std::string_view text, const Frame& frame) : text_(text), frame_(frame) {}

  NDTermPtr parse() {
    NDTermPtr t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after term");
    return t;
  }

 private:
  NDTermPtr term() {
    expect('(');
    std::string tag = word();
    NDTermPtr result;
    if (tag == "hyp") {
      result = nd_hyp(integer());
    } else if (tag == "imp-i") {
      result = nd_imp_i(term());
    } else if (tag == "imp-e") {
      Prop ann = braces_prop();
      NDTermPtr fun = term();
      NDTermPtr arg = term();
      result = nd_imp_e(std::move(ann), std::move(fun), std::move(arg));
    } else if (tag == "bot-e") {
      WorldId w = world();
      result = nd_bot_e(term(), w);
    } else if (tag == "dia-i") {
      WorldId w = world();
      result = nd_dia_i(w, term());
    } else if (tag == "dia-e") {
      Prop ann = braces_prop();
      WorldId w = world();
      NDTermPtr scrut = term();
      result = nd_dia_e(std::move(ann), std::move(scrut), table(), w);
    } else if (tag == "box-i") {
      result = nd_box_i(table());
    } else if (tag == "box-e") {
      Prop ann = braces_prop();
      WorldId w = world();
      NDTermPtr scrut = term();
      skip_ws();
      NDTermPtr cont = peek() == ')' ? nullptr : term();
      result = nd_box_e(std::move(ann), std::move(scrut), std::move(cont), w);
    } else {
      fail("unknown constructor '" + tag + "'");
    }
    expect(')');
    return result;
  }

  std::vector<std::pair<WorldId, NDTermPtr>> table() {
    expect('(');
    std::vector<std::pair<WorldId, NDTermPtr>> out;
    skip_ws();
    while (peek() != ')') {
      expect('(');
      WorldId w = world();
      out.emplace_back(w, term());
      expect(')');
      skip_ws();
    }
    expect(')');
    return out;
  }

  Prop braces_prop() {
    skip_ws();
    expect('{');
    auto end = text_.find('}', pos_);
    if (end == std::string_view::npos) fail("unterminated proposition annotation");
    std::string body(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return parse_prop(body);
  }

  WorldId world() {
    std::string name = word();
    auto w = frame_.find(name);
    if (!w) fail("unknown world '" + name + "'");
    return *w;
  }

  int integer() {
    std::string w = word();
    try {
      return std::stoi(w);
    } catch (...) {
      fail("expected an integer, got '" + w + "'");
    }
    return 0;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '{' && text_[pos_] != '}')
      ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const Frame& frame_;
};

}  // namespace

std::string print_nd(const NDTermPtr& term, const Frame& frame) {
  std::string out;
  print_term(term, frame, out);
  return out;
}

NDTermPtr parse_nd(std::string_view text, const Frame& frame) {
  return NdParser(text, frame).parse();
}

}  // namespace cplkit
