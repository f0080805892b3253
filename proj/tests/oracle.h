// Reference interpreter for tests: a direct recursive evaluator with
// explicit memo tables that enumerates every flip outcome. Results are
// reported as value strings, so it is only meaningful for programs whose
// result contains no atoms or functions.

#ifndef MEMLANG_TESTS_ORACLE_H_
#define MEMLANG_TESTS_ORACLE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "memlang/dist.h"
#include "memlang/syntax.h"
#include "memlang/value.h"

namespace oracle {

using memlang::Comp;
using memlang::CompPtr;
using memlang::EnvValue;
using memlang::Rat;

struct Fn {
  memlang::Ident binder;
  CompPtr body;
  memlang::Env env;
};

struct State {
  uint32_t atoms = 0;
  std::vector<Fn> fns;
  std::map<std::pair<uint32_t, uint32_t>, bool> table;
};

struct Outcome {
  Rat prob;
  EnvValue value;
  State state;
};

inline std::vector<Outcome> eval(const Comp& c, const memlang::Env& env, const State& s) {
  using K = Comp::Kind;
  auto val = [&](const memlang::ValPtr& v) { return memlang::eval_value(env, *v); };
  switch (c.kind) {
    case K::kReturn:
      return {{Rat(1), val(c.v), s}};
    case K::kFlip: {
      std::vector<Outcome> out;
      if (c.theta != 0) out.push_back({c.theta, EnvValue::boolean(true), s});
      if (c.theta != 1) out.push_back({1 - c.theta, EnvValue::boolean(false), s});
      return out;
    }
    case K::kFresh: {
      State t = s;
      EnvValue a = EnvValue::atom(memlang::AtomLabel{t.atoms++});
      return {{Rat(1), a, t}};
    }
    case K::kEq:
      return {{Rat(1), EnvValue::boolean(val(c.v) == val(c.w)), s}};
    case K::kMemFn: {
      State t = s;
      t.fns.push_back({c.var, c.first, env});
      return {{Rat(1), EnvValue::fun(memlang::FunLabel{uint32_t(t.fns.size() - 1)}), t}};
    }
    case K::kApp: {
      uint32_t f = val(c.v).as_fun().id;
      uint32_t a = val(c.w).as_atom().id;
      auto it = s.table.find({f, a});
      if (it != s.table.end()) return {{Rat(1), EnvValue::boolean(it->second), s}};
      const Fn& fn = s.fns[f];
      memlang::Env inner = fn.env;
      inner[fn.binder] = EnvValue::atom(memlang::AtomLabel{a});
      std::vector<Outcome> out = eval(*fn.body, inner, s);
      for (Outcome& o : out) o.state.table[{f, a}] = o.value.as_bool();
      return out;
    }
    case K::kIf:
      return eval(val(c.v).as_bool() ? *c.first : *c.second, env, s);
    case K::kMatch: {
      EnvValue p = val(c.v);
      memlang::Env inner = env;
      inner[c.var] = p.fst();
      inner[c.var2] = p.snd();
      return eval(*c.first, inner, s);
    }
    case K::kLet: {
      std::vector<Outcome> out;
      for (const Outcome& o : eval(*c.first, env, s)) {
        memlang::Env inner = env;
        inner[c.var] = o.value;
        for (Outcome& p : eval(*c.second, inner, o.state)) {
          out.push_back({o.prob * p.prob, p.value, std::move(p.state)});
        }
      }
      return out;
    }
  }
  return {};
}

inline memlang::FinDist<std::string> distribution(const Comp& p) {
  memlang::FinDist<std::string> d;
  for (const Outcome& o : eval(p, {}, State{})) d.add(o.value.to_string(), o.prob);
  return d;
}

}  // namespace oracle

#endif  // MEMLANG_TESTS_ORACLE_H_
