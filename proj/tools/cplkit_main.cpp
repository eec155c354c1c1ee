// cplkit: batch command-line surface over the provers, the certificate
// checker, the datalog engine and the axiom suite.
//
// Exit codes: 0 provable / true / all-pass, 1 refuted / false / deviation,
// 2 usage or input errors.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cplkit/cpl_prover.hpp"
#include "cplkit/errors.hpp"
#include "cplkit/focused.hpp"
#include "cplkit/lp.hpp"
#include "cplkit/nd.hpp"
#include "cplkit/text.hpp"
#include "cplkit/validate.hpp"

namespace {

using nlohmann::json;

constexpr int kExitProvable = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cplkit::Error("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

int cmd_prove(const std::string& logic, const std::string& frame_path,
              const std::string& sequent_path, const std::string& certificate_path,
              bool json_mode) {
  auto start = std::chrono::steady_clock::now();
  cplkit::Frame frame = cplkit::parse_frame(slurp(frame_path));
  cplkit::SequentFile sequent = cplkit::parse_sequent(slurp(sequent_path), frame);

  bool provable;
  std::optional<std::string> certificate_text;
  if (logic == "cpl") {
    auto result = cplkit::decide_cpl(frame, sequent.hyps, sequent.goal, sequent.goal_world);
    provable = result.provable();
    if (provable && !certificate_path.empty()) {
      cplkit::NDTermPtr cert = cplkit::extract_nd(frame, sequent.hyps, sequent.goal,
                                                  sequent.goal_world, **result.proof);
      if (!cplkit::check_nd(cplkit::Variant::Cpl, frame, sequent.hyps, cert, sequent.goal,
                            sequent.goal_world))
        throw cplkit::InvariantError("extracted certificate failed to re-check");
      certificate_text = cplkit::print_nd(cert, frame);
    }
  } else {
    provable = cplkit::prove_neg(frame, sequent.hyps, sequent.goal, sequent.goal_world).provable();
    if (!certificate_path.empty())
      throw cplkit::Error("certificates are extracted for --logic cpl only");
  }

  if (certificate_text) {
    std::ofstream out(certificate_path, std::ios::binary);
    out << *certificate_text << "\n";
  }

  if (json_mode) {
    json doc = {{"command", "prove"},
                {"logic", logic},
                {"verdict", provable ? "provable" : "refuted"},
                {"timing_ms", ms_since(start)}};
    if (certificate_text) doc["certificate"] = certificate_path;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << (provable ? "provable" : "refuted") << "\n";
    if (certificate_text) std::cout << "certificate written to " << certificate_path << "\n";
  }
  return provable ? kExitProvable : kExitRefuted;
}

int cmd_check(const std::string& logic, const std::string& frame_path,
              const std::string& sequent_path, const std::string& nd_path) {
  cplkit::Frame frame = cplkit::parse_frame(slurp(frame_path));
  cplkit::SequentFile sequent = cplkit::parse_sequent(slurp(sequent_path), frame);
  cplkit::NDTermPtr term = cplkit::parse_nd(slurp(nd_path), frame);
  cplkit::Variant variant = logic == "cpl" ? cplkit::Variant::Cpl : cplkit::Variant::CplStar;
  cplkit::CheckDiag diag;
  bool ok = cplkit::check_nd(variant, frame, sequent.hyps, term, sequent.goal, sequent.goal_world,
                             &diag);
  if (ok) {
    std::cout << "valid\n";
    return kExitProvable;
  }
  std::cout << "invalid at " << diag.path << ": " << diag.reason << "\n";
  return kExitRefuted;
}

int cmd_run(const std::string& program_path, const std::string& query_atom, bool all,
            bool json_mode) {
  cplkit::Program program = cplkit::parse_program(slurp(program_path));
  cplkit::GroundProgram ground = cplkit::ground(program);
  cplkit::StratifiedProgram sp = cplkit::stratify(ground);
  cplkit::Database db = cplkit::saturate(sp);

  if (all) {
    if (json_mode) {
      json atoms = json::array();
      for (const auto& a : db.upper) atoms.push_back(a + "@gamma");
      for (const auto& a : db.lower) atoms.push_back(a + "@beta");
      std::sort(atoms.begin(), atoms.end());
      json doc = {{"command", "run"}, {"database", atoms}};
      std::cout << doc.dump(2) << "\n";
    } else {
      std::vector<std::string> lines;
      for (const auto& a : db.upper) lines.push_back(a + "@gamma");
      for (const auto& a : db.lower) lines.push_back(a + "@beta");
      std::sort(lines.begin(), lines.end());
      for (const auto& line : lines) std::cout << line << "\n";
    }
    return kExitProvable;
  }

  bool truth = cplkit::query(db, query_atom);
  if (json_mode) {
    json doc = {{"command", "run"}, {"query", query_atom}, {"verdict", truth}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << (truth ? "true" : "false") << "\n";
  }
  return truth ? kExitProvable : kExitRefuted;
}

int cmd_axioms(std::uint64_t seed, int frames, int max_worlds, bool json_mode) {
  cplkit::ValidationConfig cfg;
  cfg.seed = seed;
  cfg.frames = frames;
  cfg.max_worlds = max_worlds;
  cplkit::SuiteReport report = cplkit::run_suite(cfg);
  if (json_mode) {
    json rows = json::array();
    for (const auto& row : report.rows)
      rows.push_back({{"schema", row.schema},
                      {"logic", row.logic},
                      {"frames", row.frames},
                      {"instances", row.instances},
                      {"verdict", row.verdict},
                      {"expected", row.expected},
                      {"ok", row.ok}});
    json doc = {{"command", "axioms"}, {"all_ok", report.all_ok}, {"rows", rows}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << cplkit::format_suite(report);
  }
  return report.all_ok ? kExitProvable : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures and a datalog engine for a pair of constructive modal logics"};
  app.require_subcommand(1);

  std::string logic = "cpl";
  std::string frame_path, sequent_path, nd_path, certificate_path, program_path, query_atom;
  bool json_mode = false, all_atoms = false;
  std::uint64_t seed = 2011;
  int frames = 50, max_worlds = 5;

  auto* prove = app.add_subcommand("prove", "decide a sequent");
  prove->add_option("--logic", logic, "cpl | cpls")->check(CLI::IsMember({"cpl", "cpls"}));
  prove->add_option("--frame", frame_path, "frame file")->required();
  prove->add_option("--sequent", sequent_path, "sequent file")->required();
  prove->add_option("--certificate", certificate_path, "write a checked certificate (cpl)");
  prove->add_flag("--json", json_mode, "structured output");

  auto* check = app.add_subcommand("check", "check a certificate against a sequent");
  check->add_option("--logic", logic, "cpl | cpls")->check(CLI::IsMember({"cpl", "cpls"}));
  check->add_option("--frame", frame_path, "frame file")->required();
  check->add_option("--sequent", sequent_path, "sequent file")->required();
  check->add_option("--nd", nd_path, "term file")->required();

  auto* run = app.add_subcommand("run", "saturate a datalog program");
  run->add_option("program", program_path, "program file")->required();
  auto* query_opt = run->add_option("--query", query_atom, "ground atom to query");
  auto* all_opt = run->add_flag("--all", all_atoms, "print the saturated database");
  query_opt->excludes(all_opt);
  run->add_flag("--json", json_mode, "structured output");

  auto* axioms = app.add_subcommand("axioms", "run the axiom validation suite");
  axioms->add_option("--seed", seed, "battery seed");
  axioms->add_option("--frames", frames, "battery size")->check(CLI::PositiveNumber);
  axioms->add_option("--max-worlds", max_worlds, "worlds per frame")->check(CLI::PositiveNumber);
  axioms->add_flag("--json", json_mode, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (prove->parsed()) return cmd_prove(logic, frame_path, sequent_path, certificate_path, json_mode);
    if (check->parsed()) return cmd_check(logic, frame_path, sequent_path, nd_path);
    if (run->parsed()) {
      if (!all_atoms && query_atom.empty())
        throw cplkit::Error("run needs --query ATOM or --all");
      return cmd_run(program_path, query_atom, all_atoms, json_mode);
    }
    if (axioms->parsed()) {
      if (const char* env = std::getenv("CPLKIT_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (...) {
          throw cplkit::Error("CPLKIT_SEED is not an integer");
        }
      }
      return cmd_axioms(seed, frames, max_worlds, json_mode);
    }
  } catch (const cplkit::ParseError& e) {
    std::cerr << "error";
    if (e.line > 0) std::cerr << " (line " << e.line << ", column " << e.col << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitError;
  } catch (const cplkit::UnstratifiableError& e) {
    std::cerr << "error: unstratifiable: " << e.what() << "\n";
    return kExitError;
  } catch (const cplkit::TooManyStrataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
