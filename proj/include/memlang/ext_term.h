// Extended expressions: computations wrapped in memoization contexts
// {{u}}^{f,a}_gamma. Reduction only ever places memo contexts along the
// let-bound spine of a term, so an extended expression is stored as a stack
// of frames around a plain focus computation.
//
// Normal form: the innermost frame, when present, is a memo frame. Let
// frames that sit below the innermost memo frame are folded back into the
// focus, so two equal terms always have equal representations.

#ifndef MEMLANG_EXT_TERM_H_
#define MEMLANG_EXT_TERM_H_

#include <string>
#include <vector>

#include "memlang/bigraph.h"
#include "memlang/syntax.h"
#include "memlang/value.h"

namespace memlang {

struct Frame {
  enum class Kind { kLet, kMemo };

  Kind kind;
  // kLet: let val var <- [hole] in body
  Ident var;
  CompPtr body;
  // kMemo: {{[hole]}}^{fun,atom}_{restore}
  FunLabel fun;
  AtomLabel atom;
  Env restore;

  static Frame let(Ident var, CompPtr body);
  static Frame memo(FunLabel f, AtomLabel a, Env restore);

  bool operator==(const Frame& other) const;
};

struct ExtTerm {
  std::vector<Frame> frames;  // outermost first
  CompPtr focus;

  static ExtTerm plain(CompPtr c) { return ExtTerm{{}, std::move(c)}; }

  bool is_plain() const { return frames.empty(); }
  // Re-establishes the normal form described above.
  void normalize();

  // (f, a) of every memo frame, innermost first.
  std::vector<std::pair<FunLabel, AtomLabel>> memo_pairs() const;

  bool operator==(const ExtTerm& other) const;
};

// Memo contexts print as {{ u }}^{f1,a0}.
std::string pretty(const ExtTerm& e);

}  // namespace memlang

#endif  // MEMLANG_EXT_TERM_H_
