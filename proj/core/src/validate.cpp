#include "cplkit/validate.hpp"

#include <algorithm>
#include <sstream>

#include "cplkit/focused.hpp"
#include "cplkit/rng.hpp"
#include "cplkit/text.hpp"

namespace cplkit {

namespace {

std::size_t mix(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

Prop P() { return atom("p"); }
Prop Q() { return atom("q"); }

const std::vector<Prop>& context_pool() {
  static const std::vector<Prop> pool = {
      P(), Q(), bot(), neg(P()), imp(P(), Q()), dia(P()), box(Q()),
  };
  return pool;
}

}  // namespace

const char* logic_name(Logic logic) { return logic == Logic::Cpl ? "cpl" : "cpls"; }

bool decide_logic(Logic logic, const Frame& frame, const Context& ctx, const Prop& goal,
                  WorldId world) {
  if (logic == Logic::Cpl) return decide_cpl(frame, ctx, goal, world).provable();
  return prove_neg(frame, ctx, goal, world).provable();
}

FrameBattery gen_frames(std::uint64_t seed, int count, int max_worlds, bool transitive) {
  if (max_worlds < 1) throw InvariantError("gen_frames needs max_worlds >= 1");
  FrameBattery battery;
  battery.seed = seed;
  battery.transitive = transitive;
  SplitMix64 rng(mix(seed, 0x9a7f));
  for (int i = 0; i < count; ++i) {
    int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_worlds)));
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) names.push_back("w" + std::to_string(k));
    // Random topological order, then edges forward in it with probability 1/2.
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    for (int k = n; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
    std::vector<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.coin()) edges.emplace_back(names[order[a]], names[order[b]]);
    Frame frame = Frame::build(names, edges);
    battery.frames.push_back(transitive ? frame.transitive_closure() : frame);
  }
  return battery;
}

const std::vector<Prop>& sample_formulas() {
  static const std::vector<Prop> samples = {
      P(), Q(), bot(), imp(P(), Q()), neg(P()), dia(P()), box(Q()),
  };
  return samples;
}

std::vector<std::vector<Prop>> instance_tuples(int arity) {
  static const std::vector<Prop> base2 = {P(), Q(), neg(P()), dia(P())};
  static const std::vector<Prop> base3 = {P(), Q(), dia(P())};
  std::vector<std::vector<Prop>> out;
  switch (arity) {
    case 1:
      for (const auto& a : sample_formulas()) out.push_back({a});
      return out;
    case 2:
      for (const auto& a : base2)
        for (const auto& b : base2) out.push_back({a, b});
      return out;
    case 3:
      for (const auto& a : base3)
        for (const auto& b : base3)
          for (const auto& c : base3) out.push_back({a, b, c});
      return out;
    default:
      throw InvariantError("schemas use at most three metavariables");
  }
}

std::vector<Context> sample_contexts(const Frame& frame, WorldId world, std::uint64_t seed,
                                     int count, int max_size) {
  std::vector<Context> out;
  out.emplace_back();
  SplitMix64 rng(mix(seed, mix(world, 0x517cc1)));
  const auto& pool = context_pool();
  for (int i = 1; i < count; ++i) {
    std::vector<Judgment> judgments;
    int size = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size) + 1));
    for (int k = 0; k < size; ++k) {
      const Prop& p = pool[rng.below(pool.size())];
      WorldId w = static_cast<WorldId>(rng.below(frame.world_count()));
      judgments.push_back({p, w});
    }
    out.emplace_back(std::move(judgments));
  }
  return out;
}

SchemaReport check_schema(const AxiomSchema& schema, const FrameBattery& battery, Logic logic,
                          const ValidationConfig& cfg) {
  SchemaReport report;
  report.schema = schema.name;
  report.logic = logic;
  report.frames = static_cast<int>(battery.frames.size());
  auto tuples = instance_tuples(schema.arity);
  for (std::size_t fi = 0; fi < battery.frames.size(); ++fi) {
    const Frame& frame = battery.frames[fi];
    for (WorldId w = 0; w < frame.world_count(); ++w) {
      auto contexts = sample_contexts(frame, w, mix(cfg.seed, fi), cfg.contexts_per_point,
                                      cfg.max_context_size);
      for (const Context& ctx : contexts) {
        for (const auto& tuple : tuples) {
          Prop inst = schema.build(tuple);
          ++report.instances;
          if (!decide_logic(logic, frame, ctx, inst, w)) {
            report.valid = false;
            report.counterexample = Counterexample{frame, ctx, inst, w};
            return report;
          }
        }
      }
    }
  }
  return report;
}

std::optional<Counterexample> search_countermodel(const AxiomSchema& schema,
                                                  const FrameBattery& battery, Logic logic,
                                                  long long* tested) {
  auto tuples = instance_tuples(schema.arity);
  const auto& pool = context_pool();
  for (const Frame& frame : battery.frames) {
    // Candidate judgments in canonical order; contexts of size 0, 1, 2.
    std::vector<Judgment> candidates;
    for (WorldId w = 0; w < frame.world_count(); ++w)
      for (const Prop& p : pool) candidates.push_back({p, w});
    std::vector<Context> contexts;
    contexts.emplace_back();
    for (std::size_t i = 0; i < candidates.size(); ++i)
      contexts.push_back(Context({candidates[i]}));
    for (std::size_t i = 0; i < candidates.size(); ++i)
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        contexts.push_back(Context({candidates[i], candidates[j]}));

    for (WorldId w = 0; w < frame.world_count(); ++w)
      for (const Context& ctx : contexts)
        for (const auto& tuple : tuples) {
          Prop inst = schema.build(tuple);
          if (tested) ++*tested;
          if (!decide_logic(logic, frame, ctx, inst, w))
            return Counterexample{frame, ctx, inst, w};
        }
  }
  return std::nullopt;
}

namespace {

// Universality of one formula over every battery point (frame, world,
// sampled context).
bool universally_provable(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg,
                          const Prop& formula, long long* tested,
                          std::string* where_failed = nullptr) {
  for (std::size_t fi = 0; fi < battery.frames.size(); ++fi) {
    const Frame& frame = battery.frames[fi];
    for (WorldId w = 0; w < frame.world_count(); ++w) {
      auto contexts = sample_contexts(frame, w, mix(cfg.seed, fi), cfg.contexts_per_point,
                                      cfg.max_context_size);
      for (const Context& ctx : contexts) {
        if (tested) ++*tested;
        if (!decide_logic(logic, frame, ctx, formula, w)) {
          if (where_failed)
            *where_failed = "frame#" + std::to_string(fi) + " world " + frame.name(w) + " goal " +
                            print_prop(formula);
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

RuleReport lob_check(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg) {
  RuleReport report{"(Lob)", logic};
  for (const auto& a : sample_formulas()) {
    Prop antecedent = imp(box(a), a);
    if (!universally_provable(battery, logic, cfg, antecedent, &report.instances)) continue;
    std::string where;
    if (!universally_provable(battery, logic, cfg, a, &report.instances, &where)) {
      ++report.violations;
      if (report.first_violation.empty()) report.first_violation = where;
    }
  }
  return report;
}

RuleReport mp_check(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg) {
  RuleReport report{"(MP)", logic};
  for (const auto& tuple : instance_tuples(2)) {
    const Prop& a = tuple[0];
    const Prop& b = tuple[1];
    if (!universally_provable(battery, logic, cfg, imp(a, b), &report.instances)) continue;
    if (!universally_provable(battery, logic, cfg, a, &report.instances)) continue;
    std::string where;
    if (!universally_provable(battery, logic, cfg, b, &report.instances, &where)) {
      ++report.violations;
      if (report.first_violation.empty()) report.first_violation = where;
    }
  }
  return report;
}

RuleReport nec_check(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg) {
  RuleReport report{"(NEC)", logic};
  for (const auto& a : sample_formulas()) {
    if (!universally_provable(battery, logic, cfg, a, &report.instances)) continue;
    std::string where;
    if (!universally_provable(battery, logic, cfg, box(a), &report.instances, &where)) {
      ++report.violations;
      if (report.first_violation.empty()) report.first_violation = where;
    }
  }
  return report;
}

RuleReport demorgan_conditional_check(const FrameBattery& battery, const ValidationConfig& cfg) {
  RuleReport report{"(dm-conditional)", Logic::Cpl};
  for (std::size_t fi = 0; fi < battery.frames.size(); ++fi) {
    const Frame& frame = battery.frames[fi];
    for (WorldId w = 0; w < frame.world_count(); ++w) {
      auto contexts = sample_contexts(frame, w, mix(cfg.seed, fi), cfg.contexts_per_point,
                                      cfg.max_context_size);
      for (const Context& ctx : contexts) {
        bool accessible_inconsistency = false;
        for (WorldId next : frame.successors(w))
          if (decide_cpl(frame, ctx, bot(), next).provable()) {
            accessible_inconsistency = true;
            break;
          }
        if (accessible_inconsistency) continue;
        for (const auto& a : sample_formulas()) {
          Prop law1 = imp(dia(neg(a)), neg(box(a)));
          Prop law2 = imp(box(neg(a)), neg(dia(a)));
          for (const Prop& law : {law1, law2}) {
            ++report.instances;
            if (!decide_cpl(frame, ctx, law, w).provable()) {
              ++report.violations;
              if (report.first_violation.empty())
                report.first_violation =
                    "frame#" + std::to_string(fi) + " world " + frame.name(w) + " goal " +
                    print_prop(law);
            }
          }
        }
      }
    }
  }
  return report;
}

Frame running_frame() {
  return Frame::build({"alpha", "beta", "gamma"},
                      {{"alpha", "beta"}, {"alpha", "gamma"}, {"beta", "gamma"}});
}

FrameBattery countermodel_search_battery() {
  FrameBattery battery;
  battery.frames = {
      Frame::build({"a", "b"}, {{"a", "b"}}),
      Frame::build({"w"}, {}),
      running_frame(),
      Frame::build({"r", "x", "y"}, {{"r", "x"}, {"r", "y"}}),
      Frame::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}),
  };
  return battery;
}

std::vector<KnownCountermodel> known_countermodels(Logic logic) {
  std::vector<KnownCountermodel> out;
  Frame rf = running_frame();
  WorldId alpha = rf.id_of("alpha");
  Frame chain = Frame::build({"a", "b"}, {{"a", "b"}});
  WorldId a = chain.id_of("a");
  WorldId b = chain.id_of("b");

  // q[alpha] does not yield ~dia q -> box ~q at alpha on the running frame.
  out.push_back({"neg-dia-to-box-neg", logic, rf, Context({{Q(), alpha}}),
                 imp(neg(dia(Q())), box(neg(Q()))), alpha});
  // ~box q -> dia ~q fails already with an empty context on a single edge.
  out.push_back({"neg-box-to-dia-neg", logic, chain, Context{}, imp(neg(box(Q())), dia(neg(Q()))),
                 a});
  // (dia p -> box q) -> box (p -> q) fails with an empty context.
  out.push_back({"split-imp", logic, chain, Context{},
                 imp(imp(dia(P()), box(Q())), box(imp(P(), Q()))), a});
  if (logic == Logic::Cpl) {
    // ~dia bot needs an inconsistent accessible world to fail.
    out.push_back({"dia-bot", logic, chain, Context({{bot(), b}}), neg(dia(bot())), a});
    // The unconditional De Morgan laws fail in the tethered logic.
    out.push_back({"dm-dia-neg", logic, chain, Context({{bot(), b}}),
                   imp(dia(neg(Q())), neg(box(Q()))), a});
    out.push_back({"dm-box-neg", logic, chain, Context({{bot(), b}}),
                   imp(box(neg(Q())), neg(dia(Q()))), a});
  }
  return out;
}

namespace {

struct SchemaSpec {
  AxiomSchema schema;
  bool cpl_valid;
  bool cpls_valid;
  bool cpl_unknown = false;  // report-only row
};

std::vector<SchemaSpec> schema_table() {
  auto u = [](Prop (*f)(const std::vector<Prop>&)) { return f; };
  (void)u;
  std::vector<SchemaSpec> out;
  auto add = [&](std::string name, int arity, std::function<Prop(const std::vector<Prop>&)> build,
                 bool transitive_only, bool cpl_valid, bool cpls_valid, bool cpl_unknown = false) {
    out.push_back({{std::move(name), arity, std::move(build), transitive_only}, cpl_valid,
                   cpls_valid, cpl_unknown});
  };
  add("(I)", 1, [](const auto& v) { return imp(v[0], v[0]); }, false, true, true);
  add("(K)", 2, [](const auto& v) { return imp(v[0], imp(v[1], v[0])); }, false, true, true);
  add("(S)", 3,
      [](const auto& v) {
        return imp(imp(v[0], imp(v[1], v[2])), imp(imp(v[0], v[1]), imp(v[0], v[2])));
      },
      false, true, true);
  add("(botE)", 1, [](const auto& v) { return imp(bot(), v[0]); }, false, true, true);
  add("(Kbox)", 2,
      [](const auto& v) { return imp(box(imp(v[0], v[1])), imp(box(v[0]), box(v[1]))); }, false,
      true, true);
  add("(Kdia)", 2,
      [](const auto& v) { return imp(box(imp(v[0], v[1])), imp(dia(v[0]), dia(v[1]))); }, false,
      true, true);
  add("(4box)", 1, [](const auto& v) { return imp(box(v[0]), box(box(v[0]))); }, true, true, true);
  add("(GL)", 1, [](const auto& v) { return imp(box(imp(box(v[0]), v[0])), box(v[0])); }, true,
      true, true);
  add("(diabot)", 1, [](const auto&) { return neg(dia(bot())); }, false, false, true);
  add("(4dia)", 1, [](const auto& v) { return imp(dia(dia(v[0])), dia(v[0])); }, true, false, true,
      /*cpl_unknown=*/true);
  add("(dm-dia-neg)", 1, [](const auto& v) { return imp(dia(neg(v[0])), neg(box(v[0]))); }, false,
      false, true);
  add("(dm-box-neg)", 1, [](const auto& v) { return imp(box(neg(v[0])), neg(dia(v[0]))); }, false,
      false, true);
  add("(dm-neg-dia)", 1, [](const auto& v) { return imp(neg(dia(v[0])), box(neg(v[0]))); }, false,
      false, false);
  add("(dm-neg-box)", 1, [](const auto& v) { return imp(neg(box(v[0])), dia(neg(v[0]))); }, false,
      false, false);
  add("(split-imp)", 2,
      [](const auto& v) { return imp(imp(dia(v[0]), box(v[1])), box(imp(v[0], v[1]))); }, false,
      false, false);
  return out;
}

std::string short_cex(const Counterexample& cex) {
  std::string ctx_text;
  for (const auto& j : cex.ctx.items()) {
    if (!ctx_text.empty()) ctx_text += ", ";
    ctx_text += print_prop(j.prop) + "@" + cex.frame.name(j.world);
  }
  return "{" + ctx_text + "} !=> " + print_prop(cex.instance) + "@" + cex.frame.name(cex.world);
}

SuiteRow axiom_row(const SchemaSpec& spec, Logic logic, const FrameBattery& plain,
                   const FrameBattery& transitive, const ValidationConfig& cfg) {
  const FrameBattery& battery = spec.schema.transitive_only ? transitive : plain;
  SuiteRow row;
  row.schema = spec.schema.name;
  row.logic = logic_name(logic);
  row.frames = static_cast<int>(battery.frames.size());

  bool expected_valid = logic == Logic::Cpl ? spec.cpl_valid : spec.cpls_valid;
  bool report_only = logic == Logic::Cpl && spec.cpl_unknown;

  if (report_only) {
    SchemaReport r = check_schema(spec.schema, battery, logic, cfg);
    row.instances = r.instances;
    row.verdict = std::string(r.valid ? "valid" : "counterexample") + " (unconfirmed by the paper)";
    row.expected = "report-only";
    row.ok = true;
    return row;
  }

  if (expected_valid) {
    SchemaReport r = check_schema(spec.schema, battery, logic, cfg);
    row.instances = r.instances;
    row.expected = "valid";
    if (r.valid) {
      row.verdict = "valid";
      row.ok = true;
    } else {
      row.verdict = "counterexample: " + short_cex(*r.counterexample);
      row.ok = false;
    }
    return row;
  }

  // Expected invalid: a refuted instance must exist somewhere; searched over
  // a fixed small frame set so degenerate user batteries stay sufficient.
  FrameBattery search = countermodel_search_battery();
  row.frames = static_cast<int>(search.frames.size());
  auto cex = search_countermodel(spec.schema, search, logic, &row.instances);
  row.expected = "refuted-instance";
  if (!cex) {
    row.verdict = "no counterexample found";
    row.ok = false;
    return row;
  }
  bool replays_refuted = !decide_logic(logic, cex->frame, cex->ctx, cex->instance, cex->world);
  row.verdict = "refuted: " + short_cex(*cex);
  row.ok = replays_refuted;
  return row;
}

SuiteRow rule_row(const RuleReport& report) {
  SuiteRow row;
  row.schema = report.rule;
  row.logic = logic_name(report.logic);
  row.frames = 0;
  row.instances = report.instances;
  row.expected = "no-violations";
  if (report.violations == 0) {
    row.verdict = "no violations";
    row.ok = true;
  } else {
    row.verdict = std::to_string(report.violations) + " violations (" + report.first_violation + ")";
    row.ok = false;
  }
  return row;
}

}  // namespace

SuiteReport run_suite(const ValidationConfig& cfg) {
  SuiteReport report;
  FrameBattery plain = gen_frames(cfg.seed, cfg.frames, cfg.max_worlds, false);
  FrameBattery transitive = gen_frames(cfg.seed, cfg.frames, cfg.max_worlds, true);

  for (const auto& spec : schema_table())
    for (Logic logic : {Logic::Cpl, Logic::CplStar})
      report.rows.push_back(axiom_row(spec, logic, plain, transitive, cfg));

  for (Logic logic : {Logic::Cpl, Logic::CplStar}) {
    report.rows.push_back(rule_row(mp_check(plain, logic, cfg)));
    report.rows.push_back(rule_row(nec_check(plain, logic, cfg)));
    report.rows.push_back(rule_row(lob_check(plain, logic, cfg)));
  }
  report.rows.push_back(rule_row(demorgan_conditional_check(plain, cfg)));

  for (Logic logic : {Logic::Cpl, Logic::CplStar}) {
    for (const auto& km : known_countermodels(logic)) {
      SuiteRow row;
      row.schema = "(pinned " + km.name + ")";
      row.logic = logic_name(logic);
      row.frames = 1;
      row.instances = 1;
      row.expected = "refuted";
      bool refuted = !decide_logic(logic, km.frame, km.ctx, km.prop, km.world);
      row.verdict = refuted ? "refuted, expected" : "PROVABLE (regression)";
      row.ok = refuted;
      report.rows.push_back(row);
    }
  }

  report.all_ok = true;
  for (const auto& row : report.rows) report.all_ok = report.all_ok && row.ok;
  return report;
}

std::string format_suite(const SuiteReport& report) {
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s += std::string(width - s.size(), ' ');
    return s + "  ";
  };
  auto num = [&](long long v, std::size_t width) {
    std::string s = std::to_string(v);
    if (s.size() < width) s = std::string(width - s.size(), ' ') + s;
    return s + "  ";
  };
  std::ostringstream out;
  out << pad("schema", 28) << pad("logic", 5) << "frames  instances  " << pad("verdict", 44)
      << pad("expected", 16) << "status\n";
  for (const auto& row : report.rows) {
    out << pad(row.schema, 28) << pad(row.logic, 5) << num(row.frames, 6) << num(row.instances, 9)
        << pad(row.verdict, 44) << pad(row.expected, 16) << (row.ok ? "pass" : "FAIL") << "\n";
  }
  out << (report.all_ok ? "all checks match the expected classification\n"
                        : "DEVIATION from the expected classification\n");
  return out.str();
}

}  // namespace cplkit
