#include <doctest.h>

#include "memlang/generator.h"
#include "memlang/syntax.h"
#include "memlang/typecheck.h"

using namespace memlang;

namespace {

struct Counts {
  int flips = 0;
  int freshes = 0;
  int memfns = 0;
};

void count(const Comp& c, Counts& n) {
  using K = Comp::Kind;
  if (c.kind == K::kFlip) ++n.flips;
  if (c.kind == K::kFresh) ++n.freshes;
  if (c.kind == K::kMemFn) ++n.memfns;
  if (c.first) count(*c.first, n);
  if (c.second) count(*c.second, n);
}

}  // namespace

TEST_CASE("generated programs are closed, typed and within budget") {
  Generator gen(20240607);
  size_t apps = 0;
  for (int i = 0; i < 500; ++i) {
    CompPtr p = gen.program();
    CHECK(free_vars(*p).empty());
    CHECK_NOTHROW(type_of_comp(TyCtx{}, *p));
    CHECK(all_memfns_fresh_clean(*p));
    CHECK(comp_depth(*p) <= 8);
    Counts n;
    count(*p, n);
    CHECK(n.flips <= 3);
    CHECK(n.freshes <= 3);
    CHECK(n.memfns <= 2);
    if (pretty(*p).find('@') != std::string::npos) ++apps;
  }
  CHECK(apps > 200);
}

TEST_CASE("the generator is deterministic per seed") {
  Generator a(9);
  Generator b(9);
  Generator c(10);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    CompPtr pa = a.program();
    CHECK(*pa == *b.program());
    if (!(*pa == *c.program())) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("budgets follow the options") {
  GenOptions options;
  options.max_flips = 0;
  options.max_memfns = 0;
  options.max_depth = 5;
  Generator gen(3, options);
  for (int i = 0; i < 100; ++i) {
    CompPtr p = gen.program();
    Counts n;
    count(*p, n);
    CHECK(n.flips == 0);
    CHECK(n.memfns == 0);
    CHECK(comp_depth(*p) <= 5);
  }
}

TEST_CASE("comp_depth") {
  CHECK(comp_depth(*parse_program("flip(1/2)")) == 1);
  CHECK(comp_depth(*parse_program("let val a <- fresh() in return a")) == 2);
  CHECK(comp_depth(*parse_program("memfn x. let val b <- flip(1/2) in return b")) == 3);
}

TEST_CASE("memoization cases are well typed") {
  Generator gen(77);
  for (int i = 0; i < 200; ++i) {
    MemCase m = gen.mem_case();
    TyCtx ctx;
    for (const auto& [x, c] : m.prefix) ctx = ctx.extended(x, type_of_comp(ctx, *c));
    CHECK(type_of_comp(ctx.extended(m.binder, Ty::atom()), *m.body) == Ty::boolean());
    CHECK(syntactic_freshness_check(*c_memfn(m.binder, m.body)));
    if (!m.arg.empty()) CHECK(*ctx.lookup(m.arg) == Ty::atom());
    for (const Ident& a : m.atoms) CHECK(*ctx.lookup(a) == Ty::atom());
  }
}

TEST_CASE("dataflow cases are well typed") {
  Generator gen(78);
  for (int i = 0; i < 200; ++i) {
    DataflowCase d = gen.dataflow_case();
    CompPtr lhs = c_let(d.x1, d.t1, c_let(d.x2, d.t2, d.u));
    CompPtr rhs = c_let(d.x2, d.t2, c_let(d.x1, d.t1, d.u));
    Ty a = type_of_comp(TyCtx{}, *wrap_prefix(d.prefix, lhs));
    CHECK(a == type_of_comp(TyCtx{}, *wrap_prefix(d.prefix, rhs)));
    CHECK(free_vars(*d.t2).count(d.x1) == 0);
  }
}
