// Seeded generator of closed, well-typed programs whose memfn bodies pass
// the syntactic freshness check.

#ifndef MEMLANG_GENERATOR_H_
#define MEMLANG_GENERATOR_H_

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "memlang/denot.h"
#include "memlang/syntax.h"
#include "memlang/typecheck.h"

namespace memlang {

struct GenOptions {
  int max_flips = 3;
  int max_freshes = 3;
  int max_memfns = 2;
  int max_depth = 8;
};

// Instance of the memoization laws: `body` has type bool under the prefix
// context extended with binder : atom. The argument is a new atom when
// `arg` is empty, otherwise an atom variable bound by the prefix.
struct MemCase {
  LetPrefix prefix;
  Ident binder;
  CompPtr body;
  Ident arg;
  // Atom variables of the prefix, used as further call sites.
  std::vector<Ident> atoms;
};

struct DataflowCase {
  LetPrefix prefix;
  Ident x1;
  Ident x2;
  CompPtr t1;
  CompPtr t2;
  CompPtr u;
};

// Height of the computation tree (a single node has depth 1).
int comp_depth(const Comp& c);

class Generator {
 public:
  explicit Generator(uint64_t seed, GenOptions options = {});

  // Closed program of depth at most max_depth.
  CompPtr program();
  MemCase mem_case();
  DataflowCase dataflow_case();
  // Computation of type t under ctx with a fresh budget, outside any memfn.
  CompPtr term(const TyCtx& ctx, const Ty& t, int depth);
  Ty type(int depth) { return random_type(depth); }

  std::mt19937_64& rng() { return rng_; }

 private:
  struct Scope {
    TyCtx ctx;
    std::set<Ident> locals;  // names bound inside the enclosing memfn bodies
    bool in_memfn = false;
  };
  struct Budget {
    int flips;
    int freshes;
    int memfns;
  };

  Ident fresh_name(const std::string& stem);
  int uniform(int lo, int hi);
  bool chance(int percent);
  Rat random_theta();
  Ty random_type(int depth);

  Scope bind(const Scope& s, const Ident& x, const Ty& t) const;
  std::vector<Ident> vars_of(const Scope& s, const Ty& t) const;
  bool producible(const Scope& s, const Ty& t) const;
  ValPtr value_of(const Scope& s, const Ty& t);

  CompPtr program_attempt();
  CompPtr gen(const Scope& s, const Ty& t, int depth);
  CompPtr gen_leaf(const Scope& s, const Ty& t, int depth);
  CompPtr gen_memfn(const Scope& s, int depth);
  LetPrefix gen_prefix(Scope& s, int lets);

  std::mt19937_64 rng_;
  GenOptions options_;
  Budget budget_{};
  int counter_ = 0;
};

}  // namespace memlang

#endif  // MEMLANG_GENERATOR_H_
