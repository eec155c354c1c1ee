#include "cplkit/ipc.hpp"

#include <vector>

#include "cplkit/errors.hpp"

namespace cplkit {

namespace {

void check_fragment(const Prop& p) {
  switch (p->kind()) {
    case PropKind::Atom:
    case PropKind::Bot:
      return;
    case PropKind::Imp:
      check_fragment(p->left());
      check_fragment(p->right());
      return;
    case PropKind::Dia:
    case PropKind::Box:
      throw FragmentError("ipc_decide handles atoms, bot and implication only");
  }
}

bool member(const std::vector<Prop>& ctx, const Prop& p) {
  for (const auto& q : ctx)
    if (prop_equal(q, p)) return true;
  return false;
}

// G4ip search. The invertible rules are applied eagerly (they strictly
// shrink the multiset under the usual weight ordering), then we branch on
// implications with implication antecedents.
bool prove(std::vector<Prop> ctx, Prop goal) {
  // Right implication is invertible.
  while (goal->kind() == PropKind::Imp) {
    ctx.push_back(goal->left());
    goal = goal->right();
  }

  // Invertible left steps to fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const Prop& h = ctx[i];
      if (h->kind() == PropKind::Bot) return true;
      if (h->kind() != PropKind::Imp) continue;
      const Prop& ante = h->left();
      if (ante->kind() == PropKind::Bot) {
        // bot -> B is vacuous.
        ctx.erase(ctx.begin() + i);
        changed = true;
        break;
      }
      if (ante->kind() == PropKind::Atom && member(ctx, ante)) {
        Prop b = h->right();
        ctx.erase(ctx.begin() + i);
        ctx.push_back(std::move(b));
        changed = true;
        break;
      }
    }
  }

  if (goal->kind() == PropKind::Atom && member(ctx, goal)) return true;

  // Non-invertible: (C -> D) -> B in the context.
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const Prop& h = ctx[i];
    if (h->kind() != PropKind::Imp || h->left()->kind() != PropKind::Imp) continue;
    const Prop c = h->left()->left();
    const Prop d = h->left()->right();
    const Prop b = h->right();
    std::vector<Prop> left = ctx;
    left.erase(left.begin() + i);
    left.push_back(imp(d, b));
    if (prove(std::move(left), h->left())) {
      std::vector<Prop> right = ctx;
      right.erase(right.begin() + i);
      right.push_back(b);
      if (prove(std::move(right), goal)) return true;
    }
  }
  return false;
}

}  // namespace

bool ipc_decide(const Prop& goal) {
  check_fragment(goal);
  return prove({}, goal);
}

}  // namespace cplkit
