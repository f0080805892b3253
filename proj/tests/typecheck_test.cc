#include <doctest.h>

#include "memlang/errors.h"
#include "memlang/ext_term.h"
#include "memlang/syntax.h"
#include "memlang/typecheck.h"

using namespace memlang;

namespace {

Ty type_of(const std::string& text, const TyCtx& ctx = {}) {
  return type_of_comp(ctx, *parse_program(text));
}

TypeError::Kind error_kind(const std::string& text, const TyCtx& ctx = {}) {
  try {
    type_of(text, ctx);
  } catch (const TypeError& e) {
    return e.kind();
  }
  FAIL("expected a type error");
  return TypeError::Kind::kTypeMismatch;
}

}  // namespace

TEST_CASE("types of closed programs") {
  CHECK(type_of("return true") == Ty::boolean());
  CHECK(type_of("fresh()") == Ty::atom());
  CHECK(type_of("memfn x. flip(1/2)") == Ty::fun());
  CHECK(type_of("let val x <- fresh() in let val f <- memfn y. flip(1/3) in f @ x") ==
        Ty::boolean());
  CHECK(type_of("let val x <- fresh() in return (x, true)") == Ty::prod(Ty::atom(), Ty::boolean()));
  CHECK(type_of("let val p <- return (true, false) in match p as (a, b) in return b") ==
        Ty::boolean());
  CHECK(Ty::prod(Ty::fun(), Ty::atom()).to_string() == "(fun * atom)");
}

TEST_CASE("typing errors") {
  CHECK(error_kind("return x") == TypeError::Kind::kUnboundVariable);
  CHECK(error_kind("let val x <- fresh() in if x then return true else return false") ==
        TypeError::Kind::kTypeMismatch);
  CHECK(error_kind("let val x <- fresh() in x @ x") == TypeError::Kind::kTypeMismatch);
  CHECK(error_kind("if true then fresh() else return true") == TypeError::Kind::kTypeMismatch);
  CHECK(error_kind("let val b <- flip(1/2) in b == b") == TypeError::Kind::kTypeMismatch);
  try {
    type_of("memfn y. fresh()");
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find("body must be bool") != std::string::npos);
  }
}

TEST_CASE("context lookup takes the rightmost declaration") {
  TyCtx ctx = TyCtx{}.extended("x", Ty::atom()).extended("x", Ty::boolean());
  CHECK(*ctx.lookup("x") == Ty::boolean());
  CHECK(ctx.lookup("y") == nullptr);
}

TEST_CASE("extended expressions with memo stacks") {
  Env gamma0 = {{"x0", EnvValue::atom(AtomLabel{0})}, {"f", EnvValue::fun(FunLabel{0})}};
  Env gamma1 = {{"x0", EnvValue::atom(AtomLabel{0})}, {"y", EnvValue::atom(AtomLabel{0})}};
  ExtTerm e;
  e.frames = {Frame::memo(FunLabel{1}, AtomLabel{0}, gamma0),
              Frame::memo(FunLabel{0}, AtomLabel{0}, gamma1)};
  e.focus = parse_program("flip(1/2)");
  TyCtx ctx = TyCtx{}.extended("x", Ty::atom());
  MemoStack stack = {{FunLabel{0}, AtomLabel{0}}, {FunLabel{1}, AtomLabel{0}}};
  CHECK(type_of_ext(ctx, stack, e) == Ty::boolean());

  MemoStack reversed = {{FunLabel{1}, AtomLabel{0}}, {FunLabel{0}, AtomLabel{0}}};
  CHECK_THROWS_AS(type_of_ext(ctx, reversed, e), TypeError);
  CHECK_THROWS_AS(type_of_ext(ctx, {{FunLabel{0}, AtomLabel{0}}}, e), TypeError);

  ExtTerm dup = e;
  dup.frames[0] = Frame::memo(FunLabel{0}, AtomLabel{0}, gamma0);
  try {
    type_of_ext(ctx, {{FunLabel{0}, AtomLabel{0}}, {FunLabel{0}, AtomLabel{0}}}, dup);
    FAIL("expected a duplicate stack error");
  } catch (const TypeError& err) {
    CHECK(err.kind() == TypeError::Kind::kDuplicateStackPair);
  }

  ExtTerm non_bool = e;
  non_bool.focus = parse_program("fresh()");
  CHECK_THROWS_AS(type_of_ext(ctx, stack, non_bool), TypeError);
}

TEST_CASE("types read off runtime values") {
  CHECK(type_of_env_value(EnvValue::pair(EnvValue::atom(AtomLabel{0}), EnvValue::boolean(true))) ==
        Ty::prod(Ty::atom(), Ty::boolean()));
  TyCtx ctx = ctx_of_env({{"f", EnvValue::fun(FunLabel{2})}});
  CHECK(*ctx.lookup("f") == Ty::fun());
}
