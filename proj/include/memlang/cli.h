// Command-line front end:
//
//   memlang check FILE
//   memlang run FILE [--seed N] [--trace] [--flips TF..] [--json] [--report]
//   memlang enumerate FILE [--observe] [--json] [--report]
//   memlang denote FILE [--json] [--report]
//   memlang soundness (FILE | --dir DIR) [--json] [--report]
//   memlang laws (--mem | --dataflow | --monad | --naturality) [--count N] [--seed S]
//
// --json prints only the distribution (or trace), which is deterministic.
// --report wraps it in a report object that also records the command, the
// program path and the elapsed time.

#ifndef MEMLANG_CLI_H_
#define MEMLANG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace memlang::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidProgram = 1,
  kFreshnessViolation = 2,
  kMismatch = 3,
  kUsage = 64,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memlang::cli

#endif  // MEMLANG_CLI_H_
