#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cplkit/errors.hpp"
#include "cplkit/ipc.hpp"
#include "cplkit/validate.hpp"
#include "helpers.hpp"

using namespace cplkit;
using namespace testing;

TEST_CASE("battery generation is seed-deterministic") {
  FrameBattery a = gen_frames(7, 10, 4, false);
  FrameBattery b = gen_frames(7, 10, 4, false);
  REQUIRE(a.frames.size() == 10);
  for (std::size_t i = 0; i < a.frames.size(); ++i) CHECK(a.frames[i] == b.frames[i]);

  FrameBattery c = gen_frames(8, 10, 4, false);
  bool any_diff = false;
  for (std::size_t i = 0; i < c.frames.size(); ++i)
    if (!(c.frames[i] == a.frames[i])) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("transitive batteries are closure-closed") {
  FrameBattery t = gen_frames(7, 10, 5, true);
  for (const Frame& f : t.frames)
    for (WorldId a = 0; a < f.world_count(); ++a)
      for (WorldId b = 0; b < f.world_count(); ++b)
        CHECK(f.reaches_plus(a, b) == f.edge(a, b));
}

TEST_CASE("independent oracle on classic formulas") {
  Prop a = atom("a"), b = atom("b");
  CHECK(ipc_decide(imp(a, a)));
  CHECK(ipc_decide(imp(a, imp(b, a))));
  CHECK(ipc_decide(imp(bot(), a)));
  CHECK_FALSE(ipc_decide(imp(imp(imp(a, b), a), a)));      // Peirce
  CHECK_FALSE(ipc_decide(imp(neg(neg(a)), a)));            // double negation elimination
  CHECK(ipc_decide(imp(a, neg(neg(a)))));
  CHECK(ipc_decide(neg(neg(imp(imp(imp(a, b), a), a)))));  // Glivenko side
  CHECK_FALSE(ipc_decide(a));
  CHECK_THROWS_AS(ipc_decide(dia(a)), FragmentError);
}

TEST_CASE("schema checking on a small battery") {
  ValidationConfig cfg;
  cfg.seed = 3;
  cfg.frames = 5;
  cfg.max_worlds = 3;
  FrameBattery battery = gen_frames(cfg.seed, cfg.frames, cfg.max_worlds, false);

  AxiomSchema identity{"(I)", 1, [](const auto& v) { return imp(v[0], v[0]); }, false};
  SchemaReport r = check_schema(identity, battery, Logic::Cpl, cfg);
  CHECK(r.valid);
  CHECK(r.instances > 0);

  AxiomSchema dm{"(dm-neg-dia)", 1,
                 [](const auto& v) { return imp(neg(dia(v[0])), box(neg(v[0]))); }, false};
  auto cex = search_countermodel(dm, battery, Logic::Cpl);
  REQUIRE(cex.has_value());
  CHECK_FALSE(decide_logic(Logic::Cpl, cex->frame, cex->ctx, cex->instance, cex->world));
}

TEST_CASE("rule checks report no violations on a small battery") {
  ValidationConfig cfg;
  cfg.seed = 11;
  cfg.frames = 6;
  cfg.max_worlds = 3;
  FrameBattery battery = gen_frames(cfg.seed, cfg.frames, cfg.max_worlds, false);
  for (Logic logic : {Logic::Cpl, Logic::CplStar}) {
    CHECK(mp_check(battery, logic, cfg).violations == 0);
    CHECK(nec_check(battery, logic, cfg).violations == 0);
    CHECK(lob_check(battery, logic, cfg).violations == 0);
  }
  CHECK(demorgan_conditional_check(battery, cfg).violations == 0);
}

TEST_CASE("pinned countermodels replay refuted") {
  for (Logic logic : {Logic::Cpl, Logic::CplStar})
    for (const auto& km : known_countermodels(logic))
      CHECK_MESSAGE(!decide_logic(logic, km.frame, km.ctx, km.prop, km.world),
                    km.name << " should be refuted in " << logic_name(logic));
}

TEST_CASE("the full suite passes at reduced size") {
  ValidationConfig cfg;
  cfg.frames = 8;
  cfg.max_worlds = 4;
  SuiteReport report = run_suite(cfg);
  for (const auto& row : report.rows)
    CHECK_MESSAGE(row.ok, row.schema << " " << row.logic << ": " << row.verdict);
  CHECK(report.all_ok);
  std::string table = format_suite(report);
  CHECK(table.find("(GL)") != std::string::npos);
  CHECK(table.find("unconfirmed by the paper") != std::string::npos);
}
