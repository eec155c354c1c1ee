#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cplkit/cpl_prover.hpp"
#include "cplkit/errors.hpp"
#include "cplkit/ipc.hpp"
#include "cplkit/text.hpp"
#include "helpers.hpp"

using namespace cplkit;
using namespace testing;

namespace {

bool provable(const Frame& f, const Context& g, const Prop& p, WorldId w) {
  return decide_cpl(f, g, p, w).provable();
}

}  // namespace

TEST_CASE("worked refutation triple") {
  Frame f = worked_frame();
  WorldId alpha = f.id_of("alpha"), beta = f.id_of("beta"), gamma = f.id_of("gamma");
  Context g({{dia(atom("q")), alpha}});
  CHECK(provable(f, g, bot(), alpha));
  CHECK_FALSE(provable(f, g, atom("q"), beta));
  CHECK_FALSE(provable(f, g, atom("q"), gamma));
}

TEST_CASE("base sequents") {
  Frame f = single_frame();
  WorldId w = f.id_of("w");
  Prop q = atom("q");
  CHECK(provable(f, Context({{q, w}}), q, w));
  CHECK(provable(f, Context{}, imp(q, q), w));
  CHECK_FALSE(provable(f, Context{}, bot(), w));          // consistency
  CHECK(provable(f, Context({{bot(), w}}), atom("p"), w));  // explosion from a hypothesis
  CHECK(provable(f, Context{}, box(bot()), w));             // vacuous necessity at a sink
  CHECK_FALSE(provable(f, Context{}, dia(imp(q, q)), w));   // no successor to witness
}

TEST_CASE("replay accepts decider output and rejects corruptions") {
  Frame f = worked_frame();
  WorldId alpha = f.id_of("alpha"), beta = f.id_of("beta");
  Prop q = atom("q");

  Context g({{dia(q), alpha}});
  auto r = decide_cpl(f, g, bot(), alpha);
  REQUIRE(r.provable());
  CHECK(replay_cpl(f, g, bot(), alpha, **r.proof));

  // init node whose world does not match the goal world
  CplProof bad{CplRule::Init, {q, beta}};
  CHECK_FALSE(replay_cpl(f, Context({{q, alpha}}), q, alpha, bad));

  // diaL omitting continuations for a nonempty witness set
  Context g2({{dia(q), alpha}, {q, beta}});
  CplProof dial{CplRule::DiaL, {dia(q), alpha}};
  CHECK_FALSE(replay_cpl(f, g2, atom("p"), alpha, dial));
}

TEST_CASE("hand-written nonempty witness tables replay") {
  // dia q @ alpha with q @ beta: the witness set is {beta}; a diaL node must
  // carry a continuation proving the conclusion outright.
  Frame f = worked_frame();
  WorldId alpha = f.id_of("alpha"), beta = f.id_of("beta");
  Prop q = atom("q");
  Context g({{dia(q), alpha}, {q, alpha}, {q, beta}});

  auto direct = decide_cpl(f, g, q, alpha);
  REQUIRE(direct.provable());
  CplProof dial{CplRule::DiaL, {dia(q), alpha}};
  dial.table.emplace_back(beta, *direct.proof);
  CHECK(replay_cpl(f, g, q, alpha, dial));

  // wrong witness world
  CplProof wrong{CplRule::DiaL, {dia(q), alpha}};
  wrong.table.emplace_back(f.id_of("gamma"), *direct.proof);
  CHECK_FALSE(replay_cpl(f, g, q, alpha, wrong));
}

TEST_CASE("emitted proofs satisfy the sub-formula property") {
  Frame f = worked_frame();
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    Context g = random_context(rng, f, 3, 3);
    Prop goal = random_prop(rng, 3);
    WorldId w = static_cast<WorldId>(rng.below(f.world_count()));
    auto r = decide_cpl(f, g, goal, w);
    if (!r.provable()) continue;

    std::set<std::string> closure;
    std::function<void(const Prop&)> subforms = [&](const Prop& p) {
      closure.insert(print_prop(p));
      switch (p->kind()) {
        case PropKind::Imp:
          subforms(p->left());
          subforms(p->right());
          break;
        case PropKind::Dia:
        case PropKind::Box:
          subforms(p->left());
          break;
        default:
          break;
      }
    };
    subforms(goal);
    for (const auto& j : g.items()) subforms(j.prop);

    bool all_subformulas = true;
    SequentVisitor visitor = [&](const Context& ctx, const Prop& c, WorldId) {
      if (!closure.count(print_prop(c))) all_subformulas = false;
      for (const auto& j : ctx.items())
        if (!closure.count(print_prop(j.prop))) all_subformulas = false;
    };
    CHECK(replay_cpl(f, g, goal, w, **r.proof, &visitor));
    CHECK(all_subformulas);
  }
}

TEST_CASE("identity, weakening and cut hold on random instances") {
  SplitMix64 rng(555);
  auto battery = gen_frames(91, 12, 4, false);
  int cut_premises = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Frame& f = battery.frames[rng.below(battery.frames.size())];
    WorldId w = static_cast<WorldId>(rng.below(f.world_count()));
    Context g = random_context(rng, f, 3, 2);
    Prop a = random_prop(rng, 3);

    // identity
    CHECK(provable(f, g.insert({a, w}), a, w));

    // weakening along the order: grow at w, drop/add at unrelated worlds
    Prop c = random_prop(rng, 3);
    if (provable(f, g, c, w)) {
      Context grown = g.insert({a, w});
      for (WorldId other = 0; other < f.world_count(); ++other)
        if (!f.reaches_star(w, other)) grown = grown.insert({random_prop(rng, 2), other});
      REQUIRE(ctx_leq(f, g, grown, w));
      CHECK(provable(f, grown, c, w));
    }

    // cut
    Context with = g.insert({a, w});
    if (provable(f, g, a, w) && provable(f, with, c, w)) {
      ++cut_premises;
      CHECK(provable(f, g, c, w));
    }
  }
  CHECK(cut_premises > 20);
}

TEST_CASE("single-world fragment agrees with the independent oracle") {
  Frame f = single_frame();
  WorldId w = f.id_of("w");
  for (const auto& p : enumerate_props(3, /*modal=*/false))
    CHECK(provable(f, Context{}, p, w) == ipc_decide(p));
}

TEST_CASE("step budget exhaustion is an error, not a verdict") {
  Frame f = worked_frame();
  Context g({{dia(atom("q")), f.id_of("alpha")}});
  SearchLimits limits;
  limits.max_steps = 2;
  CHECK_THROWS_AS(decide_cpl(f, g, bot(), f.id_of("alpha"), limits), BudgetExceededError);
}
