// Runtime values shared by both semantics: trees whose leaves are booleans,
// function labels or atom labels, and environments mapping variables to
// such trees.

#ifndef MEMLANG_VALUE_H_
#define MEMLANG_VALUE_H_

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "memlang/bigraph.h"
#include "memlang/syntax.h"

namespace memlang {

class EnvValue {
 public:
  enum class Kind { kBool, kFun, kAtom, kPair };

  EnvValue() : kind_(Kind::kBool) {}

  static EnvValue boolean(bool b);
  static EnvValue fun(FunLabel f);
  static EnvValue atom(AtomLabel a);
  static EnvValue pair(EnvValue fst, EnvValue snd);

  Kind kind() const { return kind_; }
  bool as_bool() const { return label_ != 0; }
  FunLabel as_fun() const { return FunLabel{label_}; }
  AtomLabel as_atom() const { return AtomLabel{label_}; }
  const EnvValue& fst() const { return children_->first; }
  const EnvValue& snd() const { return children_->second; }

  // Leaves in left-to-right order.
  void visit_leaves(const std::function<void(const EnvValue&)>& fn) const;
  std::vector<FunLabel> funs() const;    // first-occurrence order, no repeats
  std::vector<AtomLabel> atoms() const;  // first-occurrence order, no repeats

  EnvValue map_labels(const std::function<FunLabel(FunLabel)>& fmap,
                      const std::function<AtomLabel(AtomLabel)>& amap) const;

  std::strong_ordering operator<=>(const EnvValue& other) const;
  bool operator==(const EnvValue& other) const { return (*this <=> other) == 0; }

  // "true", "f0", "a1", "(a0, true)".
  std::string to_string() const;

 private:
  Kind kind_;
  uint32_t label_ = 0;  // bool value or label id
  std::shared_ptr<const std::pair<EnvValue, EnvValue>> children_;
};

using Env = std::map<Ident, EnvValue>;

std::string env_to_string(const Env& env);

// Evaluates a syntactic value. Throws TypeError(kUnboundVariable).
EnvValue eval_value(const Env& env, const Val& v);

// Restriction of env to the given names (missing names are skipped).
Env restrict_env(const Env& env, const std::set<Ident>& names);

}  // namespace memlang

#endif  // MEMLANG_VALUE_H_
