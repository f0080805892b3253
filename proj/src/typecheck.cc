#include "memlang/typecheck.h"

#include <algorithm>

#include "memlang/errors.h"

namespace memlang {

Ty Ty::prod(Ty a, Ty b) {
  Ty t(Kind::kProd);
  t.children_ = std::make_shared<const std::pair<Ty, Ty>>(std::move(a), std::move(b));
  return t;
}

bool Ty::operator==(const Ty& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ != Kind::kProd) return true;
  return fst() == other.fst() && snd() == other.snd();
}

std::string Ty::to_string() const {
  switch (kind_) {
    case Kind::kBool:
      return "bool";
    case Kind::kAtom:
      return "atom";
    case Kind::kFun:
      return "fun";
    case Kind::kProd:
      return "(" + fst().to_string() + " * " + snd().to_string() + ")";
  }
  return {};
}

TyCtx TyCtx::extended(const Ident& x, const Ty& t) const {
  TyCtx out = *this;
  out.decls_.emplace_back(x, t);
  return out;
}

const Ty* TyCtx::lookup(const Ident& x) const {
  for (auto it = decls_.rbegin(); it != decls_.rend(); ++it) {
    if (it->first == x) return &it->second;
  }
  return nullptr;
}

namespace {

[[noreturn]] void mismatch(const Ty& expected, const Ty& found, const std::string& where) {
  throw TypeError(TypeError::Kind::kTypeMismatch, "type mismatch in `" + where + "`: expected " +
                                                      expected.to_string() + ", found " +
                                                      found.to_string());
}

void expect(const Ty& expected, const Ty& found, const std::string& where) {
  if (!(expected == found)) mismatch(expected, found, where);
}

}  // namespace

Ty type_of_value(const TyCtx& ctx, const Val& v) {
  switch (v.kind) {
    case Val::Kind::kTrue:
    case Val::Kind::kFalse:
      return Ty::boolean();
    case Val::Kind::kVar: {
      const Ty* t = ctx.lookup(v.name);
      if (!t) throw TypeError(TypeError::Kind::kUnboundVariable, "unbound variable " + v.name);
      return *t;
    }
    case Val::Kind::kPair:
      return Ty::prod(type_of_value(ctx, *v.fst), type_of_value(ctx, *v.snd));
  }
  return Ty::boolean();
}

Ty type_of_comp(const TyCtx& ctx, const Comp& c) {
  switch (c.kind) {
    case Comp::Kind::kReturn:
      return type_of_value(ctx, *c.v);
    case Comp::Kind::kLet: {
      Ty a = type_of_comp(ctx, *c.first);
      return type_of_comp(ctx.extended(c.var, a), *c.second);
    }
    case Comp::Kind::kIf: {
      expect(Ty::boolean(), type_of_value(ctx, *c.v), pretty(*c.v));
      Ty a = type_of_comp(ctx, *c.first);
      Ty b = type_of_comp(ctx, *c.second);
      expect(a, b, pretty(c));
      return a;
    }
    case Comp::Kind::kMatch: {
      Ty p = type_of_value(ctx, *c.v);
      if (p.kind() != Ty::Kind::kProd) {
        throw TypeError(TypeError::Kind::kTypeMismatch,
                        "type mismatch in `" + pretty(*c.v) + "`: expected a product, found " +
                            p.to_string());
      }
      return type_of_comp(ctx.extended(c.var, p.fst()).extended(c.var2, p.snd()), *c.first);
    }
    case Comp::Kind::kFlip:
      return Ty::boolean();
    case Comp::Kind::kFresh:
      return Ty::atom();
    case Comp::Kind::kEq:
      expect(Ty::atom(), type_of_value(ctx, *c.v), pretty(*c.v));
      expect(Ty::atom(), type_of_value(ctx, *c.w), pretty(*c.w));
      return Ty::boolean();
    case Comp::Kind::kMemFn: {
      Ty body = type_of_comp(ctx.extended(c.var, Ty::atom()), *c.first);
      if (!(body == Ty::boolean())) {
        throw TypeError(TypeError::Kind::kTypeMismatch,
                        "type mismatch in `" + pretty(c) + "`: memfn body must be bool, found " +
                            body.to_string());
      }
      return Ty::fun();
    }
    case Comp::Kind::kApp:
      expect(Ty::fun(), type_of_value(ctx, *c.v), pretty(*c.v));
      expect(Ty::atom(), type_of_value(ctx, *c.w), pretty(*c.w));
      return Ty::boolean();
  }
  return Ty::boolean();
}

Ty type_of_ext(const TyCtx& ctx, const MemoStack& stack, const ExtTerm& e) {
  MemoStack seen;
  TyCtx level = ctx;
  Ty current = type_of_comp(level, *e.focus);
  for (auto it = e.frames.rbegin(); it != e.frames.rend(); ++it) {
    if (it->kind == Frame::Kind::kLet) {
      current = type_of_comp(level.extended(it->var, current), *it->body);
      continue;
    }
    if (!(current == Ty::boolean())) {
      throw TypeError(TypeError::Kind::kTypeMismatch,
                      "memo context for (f" + std::to_string(it->fun.id) + ", a" +
                          std::to_string(it->atom.id) + ") wraps a " + current.to_string() +
                          " computation");
    }
    std::pair<FunLabel, AtomLabel> p{it->fun, it->atom};
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) {
      throw TypeError(TypeError::Kind::kDuplicateStackPair,
                      "memo pair (f" + std::to_string(p.first.id) + ", a" +
                          std::to_string(p.second.id) + ") occurs twice");
    }
    if (seen.size() >= stack.size() || stack[seen.size()] != p) {
      throw TypeError(TypeError::Kind::kStackMismatch,
                      "memo context (f" + std::to_string(p.first.id) + ", a" +
                          std::to_string(p.second.id) + ") does not match the memo stack");
    }
    seen.push_back(p);
    level = ctx_of_env(it->restore);
  }
  if (seen.size() != stack.size()) {
    throw TypeError(TypeError::Kind::kStackMismatch,
                    "memo stack has " + std::to_string(stack.size()) + " entries but the term has " +
                        std::to_string(seen.size()) + " memo contexts");
  }
  return current;
}

Ty type_of_env_value(const EnvValue& v) {
  switch (v.kind()) {
    case EnvValue::Kind::kBool:
      return Ty::boolean();
    case EnvValue::Kind::kFun:
      return Ty::fun();
    case EnvValue::Kind::kAtom:
      return Ty::atom();
    case EnvValue::Kind::kPair:
      return Ty::prod(type_of_env_value(v.fst()), type_of_env_value(v.snd()));
  }
  return Ty::boolean();
}

TyCtx ctx_of_env(const Env& env) {
  TyCtx ctx;
  for (const auto& [name, v] : env) ctx = ctx.extended(name, type_of_env_value(v));
  return ctx;
}

}  // namespace memlang
