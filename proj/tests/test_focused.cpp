#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cplkit/cpl_prover.hpp"
#include "cplkit/errors.hpp"
#include "cplkit/focused.hpp"
#include "cplkit/ipc.hpp"
#include "helpers.hpp"

using namespace cplkit;
using namespace testing;

TEST_CASE("stability classification") {
  CHECK(is_stable(pos_atom("q")));
  CHECK(is_stable(down(neg_atom("r"))));
  CHECK(is_stable(neg_atom("r")));
  CHECK(is_stable(up(pos_atom("q"))));
  CHECK_FALSE(is_stable(pos_dia(pos_atom("q"))));
  CHECK_FALSE(is_stable(pos_box(pos_atom("q"))));
  CHECK_FALSE(is_stable(pos_bot()));
  CHECK_FALSE(is_stable(neg_imp(pos_atom("q"), up(pos_atom("q")))));
}

TEST_CASE("focused decider on primitive sequents") {
  Frame f = single_frame();
  WorldId w = f.id_of("w");
  PolProp q = pos_atom("q");

  // atom under hypothesis
  PolContext g({{q, w}});
  CHECK(decide_foc(f, make_inv(g, std::nullopt, up(q), w)).provable());

  // right focus on an absent atom fails
  CHECK_FALSE(decide_foc(f, make_rfoc(PolContext{}, q, w)).provable());

  // loaded bot closes immediately
  CHECK(decide_foc(f, make_inv(PolContext{}, PolJudgment{pos_bot(), w}, up(q), w)).provable());
}

TEST_CASE("the worked refutation inside the focused system") {
  Frame f = worked_frame();
  WorldId alpha = f.id_of("alpha");
  PolProp q = pos_atom("q");
  PolContext g({{down(up(pos_dia(q))), alpha}});
  auto r = decide_foc(f, make_inv(g, std::nullopt, up(pos_bot()), alpha));
  REQUIRE(r.provable());
  std::string why;
  CHECK(foc_invariants_hold(f, **r.proof, &why));
}

TEST_CASE("prove_neg entry point") {
  Frame f = worked_frame();
  WorldId alpha = f.id_of("alpha");
  Prop q = atom("q");

  CHECK(prove_neg(single_frame(), Context{}, imp(q, q), 0).provable());
  CHECK(prove_neg(f, Context({{dia(q), alpha}}), bot(), alpha).provable());
  // the dia-bot axiom holds in the de-tethered logic everywhere
  for (const Frame& frame : gen_frames(5, 8, 4, false).frames)
    for (WorldId w = 0; w < frame.world_count(); ++w)
      CHECK(prove_neg(frame, Context{}, neg(dia(bot())), w).provable());
}

TEST_CASE("sequent invariants are validated at entry") {
  Frame f = worked_frame();
  WorldId alpha = f.id_of("alpha"), beta = f.id_of("beta");
  PolProp q = pos_atom("q");
  // loaded judgment outside the goal world's cone
  CHECK_THROWS_AS(
      decide_foc(f, make_inv(PolContext{}, PolJudgment{q, alpha}, up(q), beta)),
      InvariantError);
  // clashing atom polarities
  PolContext g({{down(neg_atom("q")), alpha}});
  CHECK_THROWS_AS(decide_foc(f, make_inv(g, std::nullopt, up(q), alpha)), PolarityClashError);
}

TEST_CASE("single-world fragment agreement to height 3") {
  Frame f = single_frame();
  WorldId w = f.id_of("w");
  for (const auto& p : enumerate_props(3, /*modal=*/false)) {
    bool oracle = ipc_decide(p);
    CHECK(decide_cpl(f, Context{}, p, w).provable() == oracle);
    auto foc = prove_neg(f, Context{}, p, w);
    CHECK(foc.provable() == oracle);
    if (foc.provable()) {
      std::string why;
      CHECK(foc_invariants_hold(f, **foc.proof, &why));
    }
  }
}

TEST_CASE("negative-atom problems run through the focused system") {
  Frame f = single_frame();
  WorldId w = f.id_of("w");
  PolarityTable table;
  table.declare("q", Polarity::Negative);
  CHECK(prove_neg(f, Context{}, imp(atom("q"), atom("q")), w, table).provable());
  CHECK_FALSE(prove_neg(f, Context{}, atom("q"), w, table).provable());
  // Peirce stays classical-only under either polarity choice
  Prop peirce = imp(imp(imp(atom("q"), atom("r")), atom("q")), atom("q"));
  CHECK_FALSE(prove_neg(f, Context{}, peirce, w, table).provable());
}

TEST_CASE("phase invariants hold on battery-emitted proofs") {
  SplitMix64 rng(31337);
  auto battery = gen_frames(17, 10, 4, false);
  for (const Frame& frame : battery.frames) {
    for (int trial = 0; trial < 10; ++trial) {
      WorldId w = static_cast<WorldId>(rng.below(frame.world_count()));
      Context g = random_context(rng, frame, 3, 2);
      Prop goal = random_prop(rng, 3);
      auto r = prove_neg(frame, g, goal, w);
      if (!r.provable()) continue;
      std::string why;
      CHECK_MESSAGE(foc_invariants_hold(frame, **r.proof, &why), why);
    }
  }
}

TEST_CASE("de-tethered hypotheses reach down, tethered ones do not") {
  // box q at alpha plus q at its successors is usable from below in cpls
  Frame f = chain_frame();
  WorldId a = f.id_of("a"), b = f.id_of("b");
  Prop q = atom("q");
  // bot at b explodes at a only in the de-tethered logic
  Context g({{bot(), b}});
  CHECK(prove_neg(f, g, atom("p"), a).provable());
  CHECK_FALSE(decide_cpl(f, g, atom("p"), a).provable());
}

TEST_CASE("focused step budget is enforced") {
  Frame f = worked_frame();
  SearchLimits limits;
  limits.max_steps = 3;
  PolContext g({{down(up(pos_dia(pos_atom("q")))), f.id_of("alpha")}});
  CHECK_THROWS_AS(decide_foc(f, make_inv(g, std::nullopt, up(pos_bot()), f.id_of("alpha")), limits),
                  BudgetExceededError);
}
