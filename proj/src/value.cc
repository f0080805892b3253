#include "memlang/value.h"

#include <algorithm>

#include "memlang/errors.h"

namespace memlang {

EnvValue EnvValue::boolean(bool b) {
  EnvValue v;
  v.kind_ = Kind::kBool;
  v.label_ = b ? 1 : 0;
  return v;
}

EnvValue EnvValue::fun(FunLabel f) {
  EnvValue v;
  v.kind_ = Kind::kFun;
  v.label_ = f.id;
  return v;
}

EnvValue EnvValue::atom(AtomLabel a) {
  EnvValue v;
  v.kind_ = Kind::kAtom;
  v.label_ = a.id;
  return v;
}

EnvValue EnvValue::pair(EnvValue fst, EnvValue snd) {
  EnvValue v;
  v.kind_ = Kind::kPair;
  v.children_ = std::make_shared<const std::pair<EnvValue, EnvValue>>(std::move(fst),
                                                                      std::move(snd));
  return v;
}

void EnvValue::visit_leaves(const std::function<void(const EnvValue&)>& fn) const {
  if (kind_ == Kind::kPair) {
    fst().visit_leaves(fn);
    snd().visit_leaves(fn);
  } else {
    fn(*this);
  }
}

std::vector<FunLabel> EnvValue::funs() const {
  std::vector<FunLabel> out;
  visit_leaves([&](const EnvValue& leaf) {
    if (leaf.kind() == Kind::kFun &&
        std::find(out.begin(), out.end(), leaf.as_fun()) == out.end()) {
      out.push_back(leaf.as_fun());
    }
  });
  return out;
}

std::vector<AtomLabel> EnvValue::atoms() const {
  std::vector<AtomLabel> out;
  visit_leaves([&](const EnvValue& leaf) {
    if (leaf.kind() == Kind::kAtom &&
        std::find(out.begin(), out.end(), leaf.as_atom()) == out.end()) {
      out.push_back(leaf.as_atom());
    }
  });
  return out;
}

EnvValue EnvValue::map_labels(const std::function<FunLabel(FunLabel)>& fmap,
                              const std::function<AtomLabel(AtomLabel)>& amap) const {
  switch (kind_) {
    case Kind::kBool:
      return *this;
    case Kind::kFun:
      return fun(fmap(as_fun()));
    case Kind::kAtom:
      return atom(amap(as_atom()));
    case Kind::kPair:
      return pair(fst().map_labels(fmap, amap), snd().map_labels(fmap, amap));
  }
  return *this;
}

std::strong_ordering EnvValue::operator<=>(const EnvValue& other) const {
  if (auto c = kind_ <=> other.kind_; c != 0) return c;
  if (kind_ != Kind::kPair) return label_ <=> other.label_;
  if (children_ == other.children_) return std::strong_ordering::equal;
  if (auto c = fst() <=> other.fst(); c != 0) return c;
  return snd() <=> other.snd();
}

std::string EnvValue::to_string() const {
  switch (kind_) {
    case Kind::kBool:
      return as_bool() ? "true" : "false";
    case Kind::kFun:
      return "f" + std::to_string(label_);
    case Kind::kAtom:
      return "a" + std::to_string(label_);
    case Kind::kPair:
      return "(" + fst().to_string() + ", " + snd().to_string() + ")";
  }
  return {};
}

std::string env_to_string(const Env& env) {
  std::string s = "{";
  bool first = true;
  for (const auto& [name, v] : env) {
    if (!first) s += ", ";
    first = false;
    s += name + " -> " + v.to_string();
  }
  return s + "}";
}

EnvValue eval_value(const Env& env, const Val& v) {
  switch (v.kind) {
    case Val::Kind::kTrue:
      return EnvValue::boolean(true);
    case Val::Kind::kFalse:
      return EnvValue::boolean(false);
    case Val::Kind::kVar: {
      auto it = env.find(v.name);
      if (it == env.end()) {
        throw TypeError(TypeError::Kind::kUnboundVariable, "unbound variable " + v.name);
      }
      return it->second;
    }
    case Val::Kind::kPair:
      return EnvValue::pair(eval_value(env, *v.fst), eval_value(env, *v.snd));
  }
  return {};
}

Env restrict_env(const Env& env, const std::set<Ident>& names) {
  Env out;
  for (const Ident& n : names) {
    auto it = env.find(n);
    if (it != env.end()) out.emplace(n, it->second);
  }
  return out;
}

}  // namespace memlang
