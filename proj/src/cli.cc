#include "memlang/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "memlang/denot.h"
#include "memlang/errors.h"
#include "memlang/json.h"
#include "memlang/laws.h"
#include "memlang/opsem.h"
#include "memlang/typecheck.h"

namespace memlang::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

class Mismatch : public Error {
 public:
  using Error::Error;
};

struct Loaded {
  std::string path;
  CompPtr program;
  Ty type = Ty::boolean();
};

Loaded load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Loaded out;
  out.path = path;
  out.program = parse_program(buf.str());
  out.type = type_of_comp(TyCtx{}, *out.program);
  return out;
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json report(const std::string& command, const std::string& path, const std::string& semantics,
            const Timer& timer) {
  Json r;
  r["command"] = command;
  r["program"] = path;
  r["semantics"] = semantics;
  r["time_ms"] = timer.ms();
  return r;
}

void print_dist(std::ostream& out, const ClassDist& d) {
  for (const auto& [c, p] : d.weights()) {
    out << rat_to_string(p) << "\t" << c.value.to_string();
    if (!c.world.left().empty() || !c.world.right().empty()) out << "\t" << c.world.to_string();
    for (const auto& [f, b] : c.fresh_biases) out << "\tbias(f" << f.id << ")=" << rat_to_string(b);
    out << "\n";
  }
}

void print_dist(std::ostream& out, const ObservationDist& d) {
  for (const auto& [o, p] : d.weights()) {
    out << rat_to_string(p) << "\t" << o.value.to_string();
    if (!o.graph.left().empty() || !o.graph.right().empty()) out << "\t" << o.graph.to_string();
    for (const auto& [f, cl] : o.closures) {
      out << "\tf" << f.id << " = " << cl.body << " " << env_to_string(cl.env);
    }
    out << "\n";
  }
}

struct Flags {
  std::string file;
  std::string dir;
  uint64_t seed = 0;
  size_t count = 100;
  bool trace = false;
  std::string flips;
  bool json = false;
  bool report = false;
  bool observe = false;
  bool mem = false;
  bool dataflow = false;
  bool monad = false;
  bool naturality = false;
};

int cmd_check(const Flags& f, std::ostream& out) {
  Loaded p = load(f.file);
  out << "ok: " << p.type.to_string() << "\n";
  if (!all_memfns_fresh_clean(*p.program)) {
    out << "note: a memfn body applies a function to a locally bound atom; "
           "denotational commands may reject it\n";
  }
  return kOk;
}

int cmd_run(const Flags& f, std::ostream& out) {
  Timer timer;
  Loaded p = load(f.file);
  SampleOptions options;
  options.seed = f.seed;
  for (char ch : f.flips) {
    if (ch != 'T' && ch != 'F') throw CLI::ValidationError("--flips", "expected T or F, found " + std::string(1, ch));
    options.forced_flips.push_back(ch == 'T');
  }
  SampleRun run = run_sampled(*p.program, options);
  EnvValue value = terminal_value(run.terminal).first;
  if (f.json || f.report) {
    Json body;
    body["result"] = to_json(value);
    body["terminal"] = to_json(run.terminal);
    if (f.trace) body["trace"] = trace_to_json(run.trace);
    if (f.report) {
      Json r = report("run", p.path, "operational, sampled", timer);
      r["seed"] = f.seed;
      r["flips"] = f.flips;
      r.update(body);
      body = r;
    }
    out << body.dump(2) << "\n";
    return kOk;
  }
  if (f.trace) {
    for (size_t i = 0; i < run.trace.size(); ++i) {
      out << "[" << i << "] " << pretty(run.trace[i]) << "\n";
    }
  }
  out << "result: " << value.to_string() << "\n";
  return kOk;
}

int cmd_enumerate(const Flags& f, std::ostream& out) {
  Timer timer;
  Loaded p = load(f.file);
  Json body;
  if (f.observe) {
    ObservationDist d = observational_bigstep(*p.program);
    if (!f.json && !f.report) {
      print_dist(out, d);
      return kOk;
    }
    body = to_json(d);
  } else {
    ConfigDist d = enumerate_bigstep(*p.program);
    if (!f.json && !f.report) {
      for (const auto& [c, w] : d.weights()) out << rat_to_string(w) << "\t" << pretty(c) << "\n";
      return kOk;
    }
    body = to_json(d);
  }
  if (f.report) {
    Json r = report("enumerate", p.path, f.observe ? "operational, observations" : "operational, terminals", timer);
    r["distribution"] = body;
    body = r;
  }
  out << body.dump(2) << "\n";
  return kOk;
}

int cmd_denote(const Flags& f, std::ostream& out) {
  Timer timer;
  Loaded p = load(f.file);
  ClassDist d = denote(*p.program);
  if (!f.json && !f.report) {
    print_dist(out, d);
    return kOk;
  }
  Json body = to_json(d);
  if (f.report) {
    Json r = report("denote", p.path, "denotational", timer);
    r["distribution"] = body;
    body = r;
  }
  out << body.dump(2) << "\n";
  return kOk;
}

int soundness_one(const std::string& path, const Flags& f, std::ostream& out) {
  Timer timer;
  Loaded p = load(path);
  SoundnessReport s = check_soundness(*p.program);
  if (f.json || f.report) {
    Json body;
    if (f.report) body = report("soundness", p.path, "denotational vs operational", timer);
    body["equal"] = s.equal;
    body["paper_variant_equal"] = s.paper_equal;
    body["terminals"] = s.terminals;
    body["denotation"] = to_json(s.lhs);
    body["operational"] = to_json(s.rhs);
    if (!s.paper_equal) body["operational_paper_variant"] = to_json(s.rhs_paper);
    out << body.dump(2) << "\n";
  } else {
    out << (s.equal ? "equal" : "mismatch") << " (" << s.terminals << " terminal configurations)\n";
    if (!s.equal) {
      out << "denotation:\n";
      print_dist(out, s.lhs);
      out << "weighted terminal denotations:\n";
      print_dist(out, s.rhs);
    }
    if (!s.paper_equal) {
      out << "note: the per-function bias completion gives a different distribution:\n";
      print_dist(out, s.rhs_paper);
    }
  }
  return s.equal ? kOk : kMismatch;
}

int cmd_soundness(const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.dir.empty()) {
    if (f.file.empty()) throw CLI::ValidationError("soundness", "a FILE or --dir is required");
    return soundness_one(f.file, f, out);
  }
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(f.dir, ec)) {
    if (entry.path().extension() == ".mem") files.push_back(entry.path().string());
  }
  if (ec) throw IoError("cannot read directory " + f.dir);
  std::sort(files.begin(), files.end());
  size_t passed = 0, skipped = 0, failed = 0;
  for (const auto& path : files) {
    Loaded p = load(path);
    if (!all_memfns_fresh_clean(*p.program)) {
      out << "skip\t" << path << "\t(memfn body fails the syntactic freshness check)\n";
      ++skipped;
      continue;
    }
    std::ostringstream detail;
    Flags quiet = f;
    quiet.json = quiet.report = false;
    int code = kOk;
    try {
      code = soundness_one(path, quiet, detail);
    } catch (const Error& e) {
      detail << e.what() << "\n";
      code = kMismatch;
    }
    if (code == kOk) {
      ++passed;
      out << "pass\t" << path << "\n";
    } else {
      ++failed;
      out << "FAIL\t" << path << "\n" << detail.str();
    }
  }
  out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  if (files.empty()) err << "no .mem files in " << f.dir << "\n";
  return failed == 0 ? kOk : kMismatch;
}

int cmd_laws(const Flags& f, std::ostream& out) {
  int selected = f.mem + f.dataflow + f.monad + f.naturality;
  if (selected != 1) {
    throw CLI::ValidationError("laws", "choose exactly one of --mem, --dataflow, --monad, --naturality");
  }
  Timer timer;
  LawReport r;
  std::string name;
  if (f.mem) {
    name = "memoization";
    r = run_mem_laws(f.count, f.seed);
  } else if (f.dataflow) {
    name = "dataflow";
    r = run_dataflow_laws(f.count, f.seed);
  } else if (f.monad) {
    name = "monad";
    r = run_monad_laws(f.count, f.seed);
  } else {
    name = "naturality";
    r = run_naturality(f.count, f.seed);
  }
  if (f.json || f.report) {
    Json body;
    if (f.report) body = report("laws", "", name, timer);
    body["suite"] = name;
    body["cases"] = r.cases;
    body["checks"] = r.checks;
    body["passed"] = r.ok();
    body["failures"] = Json::array();
    for (const auto& x : r.failures) {
      body["failures"].push_back({{"case", x.index}, {"law", x.law}, {"detail", x.detail}});
    }
    out << body.dump(2) << "\n";
  } else {
    out << name << ": " << r.cases << " cases, " << r.checks << " checks, " << r.failures.size()
        << " failures\n";
    for (const auto& x : r.failures) out << "case " << x.index << ", " << x.law << ":\n" << x.detail << "\n";
  }
  return r.ok() ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"memlang: stochastic memoization with fresh names", "memlang"};
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "parse and typecheck a program");
  check->add_option("FILE", f.file)->required();

  auto* run_cmd = app.add_subcommand("run", "sample one run");
  run_cmd->add_option("FILE", f.file)->required();
  run_cmd->add_option("--seed", f.seed, "PRNG seed");
  run_cmd->add_flag("--trace", f.trace, "print every configuration");
  run_cmd->add_option("--flips", f.flips, "forced outcomes of the first flips, e.g. TFT");
  run_cmd->add_flag("--json", f.json);
  run_cmd->add_flag("--report", f.report);

  auto* enumerate = app.add_subcommand("enumerate", "exact big-step distribution");
  enumerate->add_option("FILE", f.file)->required();
  enumerate->add_flag("--observe", f.observe, "compare terminals up to observation");
  enumerate->add_flag("--json", f.json);
  enumerate->add_flag("--report", f.report);

  auto* denote_cmd = app.add_subcommand("denote", "denotation at the empty world");
  denote_cmd->add_option("FILE", f.file)->required();
  denote_cmd->add_flag("--json", f.json);
  denote_cmd->add_flag("--report", f.report);

  auto* soundness = app.add_subcommand("soundness", "compare both semantics");
  soundness->add_option("FILE", f.file);
  soundness->add_option("--dir", f.dir, "check every .mem file in a directory");
  soundness->add_flag("--json", f.json);
  soundness->add_flag("--report", f.report);

  auto* laws = app.add_subcommand("laws", "property suites on generated instances");
  laws->add_flag("--mem", f.mem);
  laws->add_flag("--dataflow", f.dataflow);
  laws->add_flag("--monad", f.monad);
  laws->add_flag("--naturality", f.naturality);
  laws->add_option("--count", f.count);
  laws->add_option("--seed", f.seed);
  laws->add_flag("--json", f.json);
  laws->add_flag("--report", f.report);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*check) return cmd_check(f, out);
    if (*run_cmd) return cmd_run(f, out);
    if (*enumerate) return cmd_enumerate(f, out);
    if (*denote_cmd) return cmd_denote(f, out);
    if (*soundness) return cmd_soundness(f, out, err);
    if (*laws) return cmd_laws(f, out);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    err << f.file << ":" << e.what() << "\n";
    return kInvalidProgram;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return kInvalidProgram;
  } catch (const FreshnessViolation& e) {
    err << "freshness violation: " << e.what() << "\n";
    return kFreshnessViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidProgram;
  }
  return kUsage;
}

}  // namespace memlang::cli
