#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "memlang/cli.h"

namespace {

namespace fs = std::filesystem;
const std::string kCorpus = MEMLANG_CORPUS_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = memlang::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("memlang_cli_test_" + name + ".mem");
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("check reports the type") {
  Result r = run({"check", kCorpus + "/memo_flip_1_2.mem"});
  CHECK(r.code == memlang::cli::kOk);
  CHECK(r.out == "ok: bool\n");
}

TEST_CASE("invalid programs exit with 1") {
  Result typed = run({"check", write_temp("bad_body", "memfn y. fresh()")});
  CHECK(typed.code == memlang::cli::kInvalidProgram);
  CHECK(typed.err.find("body must be bool") != std::string::npos);
  Result parsed = run({"check", write_temp("bad_syntax", "let val x <- in")});
  CHECK(parsed.code == memlang::cli::kInvalidProgram);
}

TEST_CASE("usage and io errors exit with 64") {
  CHECK(run({"check", "/nonexistent/file.mem"}).code == memlang::cli::kUsage);
  CHECK(run({}).code == memlang::cli::kUsage);
  CHECK(run({"frobnicate"}).code == memlang::cli::kUsage);
  CHECK(run({"laws"}).code == memlang::cli::kUsage);
}

TEST_CASE("freshness violations exit with 2") {
  Result r = run({"denote", kCorpus + "/nonexample_negation.mem"});
  CHECK(r.code == memlang::cli::kFreshnessViolation);
  CHECK(r.err.find("freshness-invariant") != std::string::npos);
}

TEST_CASE("denote and enumerate print fraction weights") {
  Result d = run({"denote", kCorpus + "/memo_flip_1_3.mem", "--json"});
  REQUIRE(d.code == 0);
  nlohmann::json j = nlohmann::json::parse(d.out);
  REQUIRE(j.size() == 2);
  std::set<std::string> probs;
  for (const auto& item : j) probs.insert(item.at("prob").get<std::string>());
  CHECK(probs == std::set<std::string>{"1/3", "2/3"});

  Result e = run({"enumerate", kCorpus + "/memo_flip_1_3.mem", "--observe", "--json"});
  CHECK(e.code == 0);
  CHECK(nlohmann::json::parse(e.out).size() == 2);
}

TEST_CASE("observationally equal programs print identical json") {
  Result a = run({"enumerate", kCorpus + "/repeat_call_flip_half.mem", "--observe", "--json"});
  Result b = run({"enumerate", kCorpus + "/reuse_value_flip_half.mem", "--observe", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("runs are reproducible per seed") {
  std::string file = kCorpus + "/shared_tables.mem";
  Result a = run({"run", file, "--seed", "5", "--trace", "--json"});
  Result b = run({"run", file, "--seed", "5", "--trace", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Result forced = run({"run", kCorpus + "/memo_flip_1_2.mem", "--flips", "T", "--json"});
  CHECK(forced.code == 0);
}

TEST_CASE("report wraps the distribution") {
  Result r = run({"denote", kCorpus + "/memo_flip_1_2.mem", "--report"});
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("command") == "denote");
  CHECK(j.contains("time_ms"));
}

TEST_CASE("soundness on a file and a directory") {
  CHECK(run({"soundness", kCorpus + "/shared_tables.mem"}).code == 0);
  CHECK(run({"soundness", kCorpus + "/forwarding_memo.mem"}).code == memlang::cli::kFreshnessViolation);
  Result dir = run({"soundness", "--dir", kCorpus});
  CHECK(dir.code == 0);
  CHECK(dir.out.find("FAIL") == std::string::npos);
}

TEST_CASE("law suites exit with 0") {
  for (const std::string flag : {"--mem", "--dataflow", "--monad", "--naturality"}) {
    Result r = run({"laws", flag, "--count", "10", "--seed", "1"});
    CHECK_MESSAGE(r.code == 0, (std::string(flag) + ": " + r.out + r.err));
  }
}

TEST_CASE("the installed binary maps exit codes") {
  auto status = [](const std::string& args) {
    int raw = std::system((std::string(MEMLANG_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("check " + kCorpus + "/memo_flip_1_2.mem") == 0);
  CHECK(status("denote " + kCorpus + "/nonexample_negation.mem") == 2);
  CHECK(status("check /nonexistent.mem") == 64);
}
