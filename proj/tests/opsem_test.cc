#include <doctest.h>

#include <fstream>
#include <sstream>

#include "memlang/errors.h"
#include "memlang/generator.h"
#include "memlang/opsem.h"
#include "memlang/typecheck.h"
#include "oracle.h"

using namespace memlang;

namespace {

CompPtr corpus(const std::string& name) {
  std::ifstream in(std::string(MEMLANG_CORPUS_DIR) + "/" + name + ".mem");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

bool mentions_labels(const Ty& t) {
  if (t.kind() == Ty::Kind::kProd) return mentions_labels(t.fst()) || mentions_labels(t.snd());
  return t.kind() != Ty::Kind::kBool;
}

FinDist<std::string> values_of(const ObservationDist& d) {
  return map_dist<std::string>(d, [](const Observation& o) { return o.value.to_string(); });
}

}  // namespace

TEST_CASE("P1 enumerates to a Bernoulli distribution") {
  for (const auto& [name, theta] :
       std::vector<std::pair<std::string, Rat>>{{"memo_flip_1_3", Rat(1, 3)}, {"memo_flip_1_2", Rat(1, 2)}}) {
    ObservationDist d = observational_bigstep(*corpus(name));
    CHECK(d.size() == 2);
    CHECK(values_of(d).prob("true") == theta);
    CHECK(values_of(d).prob("false") == 1 - theta);
  }
  CHECK(values_of(observational_bigstep(*corpus("memo_flip_1"))).prob("true") == 1);
}

TEST_CASE("a forwarding memo function has two terminals at one half") {
  ConfigDist d = enumerate_bigstep(*corpus("forwarding_memo"));
  REQUIRE(d.size() == 2);
  for (const auto& [c, p] : d.weights()) {
    CHECK(p == Rat(1, 2));
    CHECK(is_terminal(c));
    // Both tables store the flip's outcome at a0.
    EnvValue v = terminal_value(c).first;
    CHECK(c.graph.edge(FunLabel{0}, AtomLabel{0}) == edge_of(v.as_bool()));
    CHECK(c.graph.edge(FunLabel{1}, AtomLabel{0}) == edge_of(v.as_bool()));
  }
}

TEST_CASE("a second application reads the memo table") {
  ObservationDist d = observational_bigstep(*corpus("memo_two_samples"));
  FinDist<std::string> v = values_of(d);
  CHECK(v.size() == 2);
  CHECK(v.prob("(true, true)") == Rat(1, 2));
  CHECK(v.prob("(false, false)") == Rat(1, 2));
}

TEST_CASE("fresh atoms are pairwise distinct") {
  CHECK(values_of(observational_bigstep(*corpus("fresh_distinct")))
            .prob("false") == 1);
}

TEST_CASE("single steps") {
  Configuration c = initial_config(*parse_program("let val b <- flip(1/3) in return b"));
  std::vector<Branch> branches = step(c);
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].prob == Rat(1, 3));
  CHECK(branches[1].prob == Rat(2, 3));
  CHECK(step(initial_config(*parse_program("flip(1)"))).size() == 1);

  Configuration fresh = initial_config(*parse_program("let val a <- fresh() in return a"));
  Configuration next = step(fresh)[0].config;
  CHECK(next.graph.right().size() == 1);
  CHECK(next.env.at("a") == EnvValue::atom(AtomLabel{0}));
  CHECK(is_terminal(next));
  CHECK_THROWS_AS(step(next), RuntimeError);
}

TEST_CASE("top-level fresh and memfn are terminal and allocate on observation") {
  Configuration a = initial_config(*parse_program("fresh()"));
  CHECK(is_terminal(a));
  auto [va, ca] = terminal_value(a);
  CHECK(va.kind() == EnvValue::Kind::kAtom);
  CHECK(ca.graph.right().size() == 1);

  Configuration f = initial_config(*parse_program("memfn x. flip(1/2)"));
  CHECK(is_terminal(f));
  Observation o = observe(f);
  CHECK(o.value.kind() == EnvValue::Kind::kFun);
  REQUIRE(o.closures.size() == 1);
  CHECK(o.closures.begin()->second.body == pretty(*alpha_canonical(*parse_program("memfn x. flip(1/2)"))));
}

TEST_CASE("decompose and recompose are inverse") {
  Generator gen(4);
  for (int i = 0; i < 100; ++i) {
    EnumerateOptions options;
    options.on_config = [](const Configuration& c) {
      Decomposition d = decompose(c.term);
      if (d.kind == Decomposition::Kind::kTerminal) return;
      ExtTerm back = recompose(d.context, d.redex);
      CHECK(back == c.term);
    };
    enumerate_bigstep_serial(*gen.program(), options);
  }
}

TEST_CASE("the sampler is deterministic per seed and honours forced flips") {
  CompPtr p = corpus("shared_tables");
  SampleOptions options;
  options.seed = 17;
  SampleRun a = run_sampled(*p, options);
  SampleRun b = run_sampled(*p, options);
  CHECK(a.terminal == b.terminal);
  CHECK(a.trace.size() == b.trace.size());

  CompPtr flips = parse_program("let val a <- flip(1/100) in let val b <- flip(99/100) in return (a, b)");
  options.forced_flips = {true, false};
  CHECK(terminal_value(run_sampled(*flips, options).terminal).first.to_string() == "(true, false)");
}

TEST_CASE("a sampled run lies in the enumerated support") {
  Generator gen(8);
  for (int i = 0; i < 60; ++i) {
    CompPtr p = gen.program();
    ConfigDist d = enumerate_bigstep(*p);
    for (uint64_t seed = 0; seed < 5; ++seed) {
      SampleOptions options;
      options.seed = seed;
      CHECK(d.prob(run_sampled(*p, options).terminal) > 0);
    }
  }
}

TEST_CASE("step budget") {
  SampleOptions sample;
  sample.step_budget = 2;
  CHECK_THROWS_AS(run_sampled(*corpus("shared_tables"), sample), RuntimeError);
  EnumerateOptions options;
  options.step_budget = 2;
  CHECK_THROWS_AS(enumerate_bigstep_serial(*corpus("shared_tables"), options), RuntimeError);
}

TEST_CASE("parallel and serial enumeration agree") {
  Generator gen(21);
  for (int i = 0; i < 80; ++i) {
    CompPtr p = gen.program();
    CHECK(dist_eq(enumerate_bigstep(*p), enumerate_bigstep_serial(*p)));
  }
}

TEST_CASE("every reachable configuration has a judgement and a duplicate-free stack") {
  Generator gen(33);
  std::vector<CompPtr> programs = {corpus("forwarding_memo"), corpus("shared_tables"),
                                   corpus("nonexample_negation")};
  for (int i = 0; i < 100; ++i) programs.push_back(gen.program());
  for (const CompPtr& p : programs) {
    Ty type = type_of_comp(TyCtx{}, *p);
    EnumerateOptions options;
    options.on_config = [&](const Configuration& c) {
      Judgement j = config_judgement(c);
      CHECK(j.stack.size() == c.term.memo_pairs().size());
      if (c.term.is_plain()) CHECK(j.type == type);
      CHECK(check_stack_invariants(c));
    };
    CHECK(enumerate_bigstep_serial(*p, options).mass() == 1);
  }
}

TEST_CASE("judgements fail on malformed configurations") {
  Configuration c = initial_config(*parse_program("f @ a"));
  c.env["f"] = EnvValue::fun(FunLabel{0});
  c.env["a"] = EnvValue::atom(AtomLabel{0});
  c.graph.add_atom({});
  c.graph.add_fun({Edge::kUndef});
  CHECK_THROWS_AS(config_judgement(c), RuntimeError);  // no closure for f0
}

TEST_CASE("enumeration agrees with the reference interpreter") {
  Generator gen(55);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    CompPtr p = gen.program();
    if (mentions_labels(type_of_comp(TyCtx{}, *p))) continue;
    ++compared;
    CHECK(dist_eq(values_of(observational_bigstep(*p)), oracle::distribution(*p)));
  }
  CHECK(compared > 50);
}

TEST_CASE("a repeated call equals reusing its value") {
  for (const std::string body : {"flip_half", "flip_third", "positive"}) {
    CHECK(dist_eq(observational_bigstep(*corpus("repeat_call_" + body)),
                  observational_bigstep(*corpus("reuse_value_" + body))));
  }
}

TEST_CASE("observations forget unreachable nodes and renumber") {
  ObservationDist d = observational_bigstep(
      *parse_program("let val a <- fresh() in let val b <- fresh() in return b"));
  REQUIRE(d.size() == 1);
  const Observation& o = d.weights().begin()->first;
  CHECK(o.value == EnvValue::atom(AtomLabel{0}));
  CHECK(o.graph.right().size() == 1);
}
