// Golden-style checks of the command-line surface: exit codes and the
// byte-deterministic text output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CPLKIT_BIN) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cplkit_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

const char* kFrame =
    "world alpha\nworld beta\nworld gamma\n"
    "edge alpha beta\nedge alpha gamma\nedge beta gamma\n";

}  // namespace

TEST_CASE("prove: verdicts, exit codes and certificates") {
  TempDir dir;
  std::string frame = dir.file("frame.txt", kFrame);
  std::string s1 = dir.file("s1.txt", "hyp dia q @ alpha\ngoal bot @ alpha\n");
  std::string s2 = dir.file("s2.txt", "hyp dia q @ alpha\ngoal q @ beta\n");
  std::string cert = (dir.path / "cert.nd").string();

  RunResult r = run("prove --logic cpl --frame " + frame + " --sequent " + s1 +
                    " --certificate " + cert);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("provable") == 0);

  RunResult chk = run("check --logic cpl --frame " + frame + " --sequent " + s1 + " --nd " + cert);
  CHECK(chk.exit_code == 0);
  CHECK(chk.out == "valid\n");

  // one corrupted constructor tag: still parses as a term but fails to check
  {
    std::ifstream in(cert);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(text.find("dia-e") != std::string::npos);
    text.replace(text.find("dia-e"), 5, "box-e");
    std::ofstream(cert) << text;
  }
  RunResult bad = run("check --logic cpl --frame " + frame + " --sequent " + s1 + " --nd " + cert);
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("invalid at ") == 0);

  CHECK(run("prove --logic cpl --frame " + frame + " --sequent " + s2).exit_code == 1);
  CHECK(run("prove --logic cpls --frame " + frame + " --sequent " + s1).exit_code == 0);

  // undeclared world in the term file
  std::string nd = dir.file("loose.nd", "(dia-i delta (hyp 0))");
  CHECK(run("check --logic cpl --frame " + frame + " --sequent " + s1 + " --nd " + nd).exit_code ==
        2);

  // cyclic frame is an input error
  std::string bad_frame = dir.file("cyclic.txt", "world a\nworld b\nedge a b\nedge b a\n");
  CHECK(run("prove --logic cpl --frame " + bad_frame + " --sequent " + s1).exit_code == 2);
}

TEST_CASE("prove output is byte-deterministic") {
  TempDir dir;
  std::string frame = dir.file("frame.txt", kFrame);
  std::string s1 = dir.file("s1.txt", "hyp dia q @ alpha\ngoal bot @ alpha\n");
  RunResult a = run("prove --logic cpl --frame " + frame + " --sequent " + s1);
  RunResult b = run("prove --logic cpl --frame " + frame + " --sequent " + s1);
  CHECK(a.out == b.out);
}

TEST_CASE("run: database listing, queries, stratification errors") {
  TempDir dir;
  std::string prog = dir.file("prog.lp",
                              "edge(a,b).\n"
                              "edge(Y,X) :- edge(X,Y).\n"
                              "path(X,Y) :- edge(X,Y).\n"
                              "path(X,Z) :- edge(X,Y), path(Y,Z).\n"
                              "noedge(X,Y) :- path(X,Y), !edge(X,Y).\n");

  RunResult all = run("run " + prog + " --all");
  CHECK(all.exit_code == 0);
  CHECK(all.out ==
        "edge(a,b)@gamma\n"
        "edge(b,a)@gamma\n"
        "noedge(a,a)@beta\n"
        "noedge(b,b)@beta\n"
        "path(a,a)@gamma\n"
        "path(a,b)@gamma\n"
        "path(b,a)@gamma\n"
        "path(b,b)@gamma\n");

  CHECK(run("run " + prog + " --query noedge(a,a)").out == "true\n");
  CHECK(run("run " + prog + " --query noedge(a,b)").exit_code == 1);

  std::string paradox = dir.file("paradox.lp",
                                 "edge(a,b).\npath(X,Y) :- edge(X,Y).\n"
                                 "edge(X,Y) :- path(X,Y), !edge(X,Y).\n");
  RunResult bad = run("run " + paradox + " --query edge(a,a)");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("unstratifiable") != std::string::npos);

  CHECK(run("run " + dir.file("syntax.lp", "p(a)") + " --all").exit_code == 2);
}

TEST_CASE("structured output is well-formed") {
  TempDir dir;
  std::string frame = dir.file("frame.txt", kFrame);
  std::string s1 = dir.file("s1.txt", "hyp dia q @ alpha\ngoal bot @ alpha\n");
  RunResult r = run("prove --logic cpl --json --frame " + frame + " --sequent " + s1);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"verdict\": \"provable\"") != std::string::npos);
  CHECK(r.out.find("\"timing_ms\"") != std::string::npos);

  std::string prog = dir.file("tiny.lp", "p.\n");
  RunResult rj = run("run " + prog + " --all --json");
  CHECK(rj.exit_code == 0);
  CHECK(rj.out.find("\"p@gamma\"") != std::string::npos);
}

TEST_CASE("axioms: tiny battery, seed override via the environment") {
  RunResult r = run("axioms --frames 1 --max-worlds 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("all checks match") != std::string::npos);

  RunResult env = run("axioms --frames 2 --max-worlds 2 --seed 1");
  RunResult env2 = run("axioms --frames 2 --max-worlds 2 --seed 99999");
  // CPLKIT_SEED wins over --seed
  std::string prefixed = std::string("CPLKIT_SEED=1 ") + CPLKIT_BIN +
                         " axioms --frames 2 --max-worlds 2 --seed 99999 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(prefixed.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  pclose(pipe);
  CHECK(out == env.out);
  CHECK(env.out != env2.out);

  CHECK(run("axioms --frames 0").exit_code == 2);
}
