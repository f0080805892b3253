// Exception hierarchy. Every failure surfaced by the library derives from
// memlang::Error so front ends can catch a single type.

#ifndef MEMLANG_ERRORS_H_
#define MEMLANG_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace memlang {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string found,
              std::vector<std::string> expected);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& found() const { return found_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string found_;
  std::vector<std::string> expected_;
};

class TypeError : public Error {
 public:
  enum class Kind {
    kUnboundVariable,
    kTypeMismatch,
    kStackMismatch,
    kDuplicateStackPair,
  };
  TypeError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Raised by the distribution layer when weights do not sum to exactly one.
class MassError : public Error {
 public:
  using Error::Error;
};

class BigraphError : public Error {
 public:
  enum class Kind {
    kEdgeAlreadyDefined,
    kUnknownLabel,
    kTooManyUndefined,
    kNotTotal,
    kNotEmbedding,
  };
  BigraphError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Operational semantics failures: stuck terms, malformed configurations,
// memoizing a non-boolean, exceeding the step budget.
class RuntimeError : public Error {
 public:
  using Error::Error;
};

class FreshnessViolation : public Error {
 public:
  FreshnessViolation(std::string body, std::vector<bool> first,
                     std::string first_prob, std::vector<bool> second,
                     std::string second_prob);

  const std::string& body() const { return body_; }
  // Two connectivities of the fresh argument (one bit per existing function)
  // under which the body returns true with different probabilities.
  const std::vector<bool>& first() const { return first_; }
  const std::vector<bool>& second() const { return second_; }
  const std::string& first_prob() const { return first_prob_; }
  const std::string& second_prob() const { return second_prob_; }

 private:
  std::string body_;
  std::vector<bool> first_;
  std::string first_prob_;
  std::vector<bool> second_;
  std::string second_prob_;
};

// A denotational class violated a structural property (non-collapsed
// boolean class, wrong class shape); signals an evaluator bug.
class DenotationError : public Error {
 public:
  using Error::Error;
};

}  // namespace memlang

#endif  // MEMLANG_ERRORS_H_
