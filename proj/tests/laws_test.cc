#include <doctest.h>

#include "memlang/laws.h"
#include "memlang/opsem.h"
#include "memlang/typecheck.h"

using namespace memlang;

namespace {

std::string report_text(const LawReport& r) {
  std::string out;
  for (const LawFailure& f : r.failures) {
    out += std::to_string(f.index) + " " + f.law + ": " + f.detail + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("memoization programs for a hand case") {
  MemCase m;
  m.prefix = {{"a", parse_program("fresh()")}};
  m.binder = "x";
  m.body = parse_program("flip(1/3)");
  m.arg = "a";
  m.atoms = {"a"};
  MemPrograms p = mem_programs(m);
  for (const CompPtr& c : {p.one_sample, p.substituted, p.two_samples, p.diagonal,
                           p.unfolded_lhs, p.unfolded_rhs}) {
    CHECK(free_vars(*c).empty());
    CHECK_NOTHROW(type_of_comp(TyCtx{}, *c));
  }
  CHECK(dist_eq(observational_bigstep(*p.one_sample), observational_bigstep(*p.substituted)));
  CHECK(dist_eq(observational_bigstep(*p.two_samples), observational_bigstep(*p.diagonal)));
  CHECK(dist_eq(denote(*p.unfolded_lhs), denote(*p.unfolded_rhs)));
  CHECK(prob_true(denote(*p.one_sample)) == Rat(1, 3));

  m.arg.clear();
  MemPrograms fresh = mem_programs(m);
  CHECK(pretty(*fresh.one_sample).find("fresh()") != std::string::npos);
  CHECK(dist_eq(denote(*fresh.two_samples), denote(*fresh.diagonal)));
}

TEST_CASE("memoization laws hold on generated cases") {
  LawReport r = run_mem_laws(40, 1);
  CHECK(r.cases == 40);
  CHECK(r.checks == 240);
  CHECK_MESSAGE(r.ok(), report_text(r));
}

TEST_CASE("dataflow laws hold on generated cases") {
  LawReport r = run_dataflow_laws(40, 2);
  CHECK(r.cases == 40);
  CHECK_MESSAGE(r.ok(), report_text(r));
}

TEST_CASE("monad laws hold at random bias states") {
  LawReport r = run_monad_laws(40, 3);
  CHECK(r.checks > 0);
  CHECK_MESSAGE(r.ok(), report_text(r));
}

TEST_CASE("the denotation is natural in the world") {
  LawReport r = run_naturality(40, 4);
  CHECK(r.checks > 0);
  CHECK_MESSAGE(r.ok(), report_text(r));
}

TEST_CASE("random worlds are total and biases are probabilities") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    Bigraph g = random_world(rng, 2, 2);
    CHECK(g.is_total());
    CHECK(g.left().size() <= 2);
    CHECK(g.right().size() <= 2);
    Biases b = random_biases(rng, g);
    CHECK(b.size() == g.left().size());
    for (const auto& [f, p] : b) CHECK(is_probability(p));
  }
}
