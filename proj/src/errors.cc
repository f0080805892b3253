#include "memlang/errors.h"

namespace memlang {

namespace {

std::string syntax_message(int line, int column, const std::string& found,
                           const std::vector<std::string>& expected) {
  std::string msg = std::to_string(line) + ":" + std::to_string(column) +
                    ": syntax error: unexpected " + found;
  if (!expected.empty()) {
    msg += ", expected ";
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += (i + 1 == expected.size()) ? " or " : ", ";
      msg += expected[i];
    }
  }
  return msg;
}

std::string bits(const std::vector<bool>& e) {
  std::string s;
  for (bool b : e) s += b ? '1' : '0';
  return s.empty() ? "<none>" : s;
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, std::string found,
                         std::vector<std::string> expected)
    : Error(syntax_message(line, column, found, expected)),
      line_(line),
      column_(column),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

FreshnessViolation::FreshnessViolation(std::string body, std::vector<bool> first,
                                       std::string first_prob,
                                       std::vector<bool> second,
                                       std::string second_prob)
    : Error("memoized body is not freshness-invariant: " + body +
            " returns true with probability " + first_prob +
            " under connectivity " + bits(first) + " but " + second_prob +
            " under connectivity " + bits(second)),
      body_(std::move(body)),
      first_(std::move(first)),
      first_prob_(std::move(first_prob)),
      second_(std::move(second)),
      second_prob_(std::move(second_prob)) {}

}  // namespace memlang
