// Typing for values, computations and extended expressions with memo
// stacks. Types are synthesized; no annotations are needed.

#ifndef MEMLANG_TYPECHECK_H_
#define MEMLANG_TYPECHECK_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "memlang/bigraph.h"
#include "memlang/ext_term.h"
#include "memlang/syntax.h"
#include "memlang/value.h"

namespace memlang {

class Ty {
 public:
  enum class Kind { kBool, kAtom, kFun, kProd };

  static Ty boolean() { return Ty(Kind::kBool); }
  static Ty atom() { return Ty(Kind::kAtom); }
  static Ty fun() { return Ty(Kind::kFun); }
  static Ty prod(Ty a, Ty b);

  Kind kind() const { return kind_; }
  const Ty& fst() const { return children_->first; }
  const Ty& snd() const { return children_->second; }

  bool operator==(const Ty& other) const;
  std::string to_string() const;

 private:
  explicit Ty(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const std::pair<Ty, Ty>> children_;
};

// Ordered declarations; lookup returns the rightmost match.
class TyCtx {
 public:
  TyCtx() = default;
  TyCtx(std::initializer_list<std::pair<Ident, Ty>> decls) : decls_(decls) {}

  TyCtx extended(const Ident& x, const Ty& t) const;
  const Ty* lookup(const Ident& x) const;
  const std::vector<std::pair<Ident, Ty>>& decls() const { return decls_; }

 private:
  std::vector<std::pair<Ident, Ty>> decls_;
};

// Memo stack, innermost (most recently entered) memo context first.
using MemoStack = std::vector<std::pair<FunLabel, AtomLabel>>;

Ty type_of_value(const TyCtx& ctx, const Val& v);
Ty type_of_comp(const TyCtx& ctx, const Comp& c);

// `ctx` types the focus of e. Each memo frame's restore environment
// supplies the context for the frames outside it. The memo pairs of e,
// innermost first, must equal `stack` and be pairwise distinct.
Ty type_of_ext(const TyCtx& ctx, const MemoStack& stack, const ExtTerm& e);

// Type read off the shape of a runtime value.
Ty type_of_env_value(const EnvValue& v);
TyCtx ctx_of_env(const Env& env);

}  // namespace memlang

#endif  // MEMLANG_TYPECHECK_H_
