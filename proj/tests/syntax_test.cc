#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "memlang/errors.h"
#include "memlang/generator.h"
#include "memlang/syntax.h"

using namespace memlang;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("parsing and printing") {
  CompPtr p = parse_program(
      "# comment\nlet val x <- fresh() in\nlet val f <- memfn y. flip(1/3) in f @ x");
  CHECK(p->kind == Comp::Kind::kLet);
  CHECK(pretty(*p) == "let val x <- fresh() in let val f <- memfn y. flip(1/3) in f @ x");
  CHECK(pretty(*parse_program("return (true, (x, false))")) == "return (true, (x, false))");
  CHECK(pretty(*parse_program("match p as (a, b) in a == b")) == "match p as (a, b) in a == b");
  CHECK(parse_program("flip(0.25)")->theta == Rat(1, 4));
}

TEST_CASE("a memfn body extends as far right as possible") {
  CompPtr p = parse_program("memfn x. let val b <- x == y in if b then flip(1/2) else return false");
  REQUIRE(p->kind == Comp::Kind::kMemFn);
  CHECK(p->first->kind == Comp::Kind::kLet);
}

TEST_CASE("syntax errors carry positions and expectations") {
  try {
    parse_program("let val x <-\n  in return x");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_program("flip(3/2)"), SyntaxError);
  CHECK_THROWS_AS(parse_program("return"), SyntaxError);
  CHECK_THROWS_AS(parse_program("return true true"), SyntaxError);
  CHECK_THROWS_AS(parse_program("let val if <- return true in return true"), SyntaxError);
  CHECK_FALSE(is_identifier("memfn"));
  CHECK(is_identifier("x_1"));
}

TEST_CASE("printing then parsing gives back the same tree") {
  for (const auto& e : std::filesystem::directory_iterator(MEMLANG_CORPUS_DIR)) {
    CompPtr p = parse_program(read(e.path().string()));
    CHECK(*parse_program(pretty(*p)) == *p);
  }
  Generator gen(11);
  for (int i = 0; i < 300; ++i) {
    CompPtr p = gen.program();
    CHECK(*parse_program(pretty(*p)) == *p);
  }
}

TEST_CASE("free variables") {
  CompPtr p = parse_program("let val x <- f @ a in memfn y. let val b <- y == x in g @ z");
  CHECK(free_vars(*p) == std::set<Ident>{"a", "f", "g", "z"});
  CHECK(free_vars(*parse_program("match p as (a, b) in a == c")) == std::set<Ident>{"c", "p"});
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(*parse_program("memfn x. x == y"), *parse_program("memfn z. z == y")));
  CHECK_FALSE(alpha_eq(*parse_program("memfn x. x == y"), *parse_program("memfn y. y == y")));
  CHECK(alpha_eq(*parse_program("let val a <- fresh() in return a"),
                 *parse_program("let val b <- fresh() in return b")));
  CHECK(*alpha_canonical(*parse_program("memfn x. x == y")) ==
        *alpha_canonical(*parse_program("memfn q. q == y")));
}

TEST_CASE("distinct_binders renames repeated binders only") {
  CompPtr p = parse_program(
      "let val x <- flip(1/2) in let val x <- flip(1/3) in let val y <- return x in return y");
  CompPtr d = distinct_binders(*p);
  CHECK(alpha_eq(*p, *d));
  CHECK(d->var == "x");
  CHECK(d->second->var != "x");
  CHECK(d->second->second->var == "y");
}

TEST_CASE("substitution avoids capture") {
  CompPtr p = parse_program("memfn y. x == y");
  CompPtr s = substitute(*p, "x", *v_var("y"));
  CHECK(free_vars(*s) == std::set<Ident>{"y"});
  CHECK(alpha_eq(*s, *parse_program("memfn z. y == z")));
  CompPtr shadowed = parse_program("let val x <- fresh() in return x");
  CHECK(*substitute(*shadowed, "x", *v_true()) == *shadowed);
}

TEST_CASE("syntactic freshness check") {
  CHECK(syntactic_freshness_check(
      *parse_program("memfn x. let val b <- f @ x0 in if b then return true else x == x0")));
  CHECK(syntactic_freshness_check(*parse_program("memfn x. flip(1/2)")));
  CHECK_FALSE(syntactic_freshness_check(*parse_program("memfn y. f @ y")));
  CHECK_FALSE(syntactic_freshness_check(
      *parse_program("memfn x. let val b <- f @ x in if b then return false else return true")));
  CHECK_FALSE(syntactic_freshness_check(*parse_program("memfn x. let val y <- fresh() in f @ y")));
  CHECK_FALSE(all_memfns_fresh_clean(
      *parse_program("let val g <- memfn x. flip(1/2) in let val h <- memfn y. g @ y in return h")));
}

TEST_CASE("term size counts values and computations") {
  CHECK(term_size(*parse_program("return true")) == 2);
  CHECK(term_size(*parse_program("f @ x")) == 3);
  CHECK(term_size(*parse_program("let val x <- fresh() in return (x, x)")) == 6);
}
