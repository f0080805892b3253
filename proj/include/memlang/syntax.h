// Abstract syntax of memlang, the concrete-syntax parser and printer, and
// the purely syntactic analyses (free variables, alpha-equivalence,
// capture-avoiding substitution, the syntactic freshness check).
//
// Concrete syntax:
//
//   comp := "return" val
//         | "let" "val" IDENT "<-" comp "in" comp
//         | "if" val "then" comp "else" comp
//         | "match" val "as" "(" IDENT "," IDENT ")" "in" comp
//         | "flip" "(" RAT ")" | "fresh" "(" ")"
//         | val "==" val | "memfn" IDENT "." comp | val "@" val
//   val  := "true" | "false" | IDENT | "(" val "," val ")"
//
// '#' starts a comment that runs to the end of the line.

#ifndef MEMLANG_SYNTAX_H_
#define MEMLANG_SYNTAX_H_

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "memlang/rational.h"

namespace memlang {

using Ident = std::string;

struct Val;
struct Comp;
using ValPtr = std::shared_ptr<const Val>;
using CompPtr = std::shared_ptr<const Comp>;

struct Val {
  enum class Kind { kTrue, kFalse, kVar, kPair };

  Kind kind = Kind::kTrue;
  Ident name;  // kVar
  ValPtr fst;  // kPair
  ValPtr snd;  // kPair
};

struct Comp {
  enum class Kind {
    kReturn,  // return v
    kLet,     // let val var <- first in second
    kIf,      // if v then first else second
    kMatch,   // match v as (var, var2) in first
    kFlip,    // flip(theta)
    kFresh,   // fresh()
    kEq,      // v == w
    kMemFn,   // memfn var. first
    kApp,     // v @ w
  };

  Kind kind = Kind::kReturn;
  Ident var;
  Ident var2;
  ValPtr v;
  ValPtr w;
  CompPtr first;
  CompPtr second;
  Rat theta;
};

ValPtr v_true();
ValPtr v_false();
ValPtr v_bool(bool b);
ValPtr v_var(Ident name);
ValPtr v_pair(ValPtr fst, ValPtr snd);

CompPtr c_return(ValPtr v);
CompPtr c_let(Ident x, CompPtr bound, CompPtr body);
CompPtr c_if(ValPtr cond, CompPtr then_branch, CompPtr else_branch);
CompPtr c_match(ValPtr v, Ident x, Ident y, CompPtr body);
CompPtr c_flip(Rat theta);
CompPtr c_fresh();
CompPtr c_eq(ValPtr v, ValPtr w);
CompPtr c_memfn(Ident x, CompPtr body);
CompPtr c_app(ValPtr f, ValPtr arg);

// Structural equality (bound names must match exactly).
bool operator==(const Val& a, const Val& b);
bool operator==(const Comp& a, const Comp& b);

// Parses a whole program. Throws SyntaxError.
CompPtr parse_program(std::string_view text);
ValPtr parse_value(std::string_view text);
bool is_identifier(std::string_view text);

std::string pretty(const Val& v);
std::string pretty(const Comp& c);

std::set<Ident> free_vars(const Val& v);
std::set<Ident> free_vars(const Comp& c);

bool alpha_eq(const Comp& a, const Comp& b);

// Renames every binder to b0, b1, ... in pre-order. Two terms are
// alpha-equivalent iff their canonical forms are structurally equal.
CompPtr alpha_canonical(const Comp& c);

// Renames binders that shadow an enclosing binder or repeat an earlier
// binder so every binder in the term is distinct and disjoint from the free
// variables. Names that are already unique are kept.
CompPtr distinct_binders(const Comp& c);

ValPtr substitute(const Val& target, const Ident& x, const Val& v);
CompPtr substitute(const Comp& c, const Ident& x, const Val& v);

// Conservative check for freshness-invariance of `memfn x. u`: false iff
// the body contains an application whose argument is a variable that is
// not free in the whole abstraction (the memoized argument itself or a
// variable bound inside the body). Precondition: fn.kind == kMemFn.
bool syntactic_freshness_check(const Comp& fn);

// True iff every memfn subterm of c passes syntactic_freshness_check.
bool all_memfns_fresh_clean(const Comp& c);

// Number of AST nodes (values and computations).
size_t term_size(const Comp& c);

}  // namespace memlang

#endif  // MEMLANG_SYNTAX_H_
