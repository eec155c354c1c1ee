// Executable axiom validation: frame batteries, schema instantiation over a
// fixed sample set, rule checks (modus ponens, necessitation, the provability
// rule), De Morgan checks, countermodel search, and pinned regression
// countermodels. Hilbert-level validity is approximated by universal
// quantification over the battery and sampled contexts; only the soundness
// direction is claimed.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/cpl_prover.hpp"
#include "cplkit/frame.hpp"
#include "cplkit/prop.hpp"

namespace cplkit {

enum class Logic : std::uint8_t { Cpl, CplStar };

const char* logic_name(Logic logic);  // "cpl" / "cpls"

bool decide_logic(Logic logic, const Frame& frame, const Context& ctx, const Prop& goal,
                  WorldId world);

struct FrameBattery {
  std::uint64_t seed = 0;
  bool transitive = false;
  std::vector<Frame> frames;
};

// Random DAGs from a random topological order with edge probability 1/2,
// transitively closed on request; deterministic per seed.
FrameBattery gen_frames(std::uint64_t seed, int count, int max_worlds, bool transitive);

struct ValidationConfig {
  std::uint64_t seed = 2011;
  int frames = 50;
  int max_worlds = 5;
  int contexts_per_point = 3;  // sampled contexts per (frame, world), first is empty
  int max_context_size = 4;
};

struct AxiomSchema {
  std::string name;
  int arity = 1;  // metavariables
  std::function<Prop(const std::vector<Prop>&)> build;
  bool transitive_only = false;
};

// The fixed instantiation sample set over two atoms, and the tuples used
// for k-ary schemas (smaller base sets for higher arities).
const std::vector<Prop>& sample_formulas();
std::vector<std::vector<Prop>> instance_tuples(int arity);

std::vector<Context> sample_contexts(const Frame& frame, WorldId world, std::uint64_t seed,
                                     int count, int max_size);

struct Counterexample {
  Frame frame;
  Context ctx;
  Prop instance;
  WorldId world = kNoWorld;
};

struct SchemaReport {
  std::string schema;
  Logic logic = Logic::Cpl;
  int frames = 0;
  long long instances = 0;
  bool valid = true;
  std::optional<Counterexample> counterexample;
};

SchemaReport check_schema(const AxiomSchema& schema, const FrameBattery& battery, Logic logic,
                          const ValidationConfig& cfg);

// Systematic search over battery frames, small enumerated contexts and the
// sample tuples; first refuted instance in canonical order. `tested` (when
// given) accumulates the number of instances decided.
std::optional<Counterexample> search_countermodel(const AxiomSchema& schema,
                                                  const FrameBattery& battery, Logic logic,
                                                  long long* tested = nullptr);

struct RuleReport {
  std::string rule;
  Logic logic = Logic::Cpl;
  long long instances = 0;
  int violations = 0;
  std::string first_violation;
};

// Löb: whenever box A -> A holds at every battery point, A must too.
RuleReport lob_check(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg);
RuleReport mp_check(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg);
RuleReport nec_check(const FrameBattery& battery, Logic logic, const ValidationConfig& cfg);

// Tethered De Morgan: at sampled points with no accessible inconsistency,
// both dia~A -> ~box A and box~A -> ~dia A must hold.
RuleReport demorgan_conditional_check(const FrameBattery& battery, const ValidationConfig& cfg);

struct KnownCountermodel {
  std::string name;
  Logic logic = Logic::Cpl;
  Frame frame;
  Context ctx;
  Prop prop;
  WorldId world = kNoWorld;
};

// Fixed regression instances; each must replay Refuted through the logic's
// decider.
std::vector<KnownCountermodel> known_countermodels(Logic logic);

// The alpha/beta/gamma frame used throughout the worked examples.
Frame running_frame();

// Fixed small frames (up to five worlds) used by countermodel search,
// independent of the configured battery.
FrameBattery countermodel_search_battery();

struct SuiteRow {
  std::string schema;
  std::string logic;
  int frames = 0;
  long long instances = 0;
  std::string verdict;
  std::string expected;
  bool ok = true;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  bool all_ok = true;
};

SuiteReport run_suite(const ValidationConfig& cfg);
std::string format_suite(const SuiteReport& report);  // fixed-column table

}  // namespace cplkit
