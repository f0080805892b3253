#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "memlang/bigraph.h"
#include "memlang/errors.h"

using namespace memlang;

namespace {

Bigraph two_by_two() {
  Bigraph g;
  g.add_atom({});
  g.add_atom({});
  g.add_fun({Edge::kTrue, Edge::kUndef});
  g.add_fun({Edge::kUndef, Edge::kFalse});
  return g;
}

}  // namespace

TEST_CASE("adding nodes and edges") {
  Bigraph g = two_by_two();
  CHECK(g.left().size() == 2);
  CHECK(g.right().size() == 2);
  CHECK(g.next_fun().id == 2);
  CHECK(g.next_atom().id == 2);
  CHECK(g.edge(FunLabel{0}, AtomLabel{0}) == Edge::kTrue);
  CHECK_FALSE(g.is_total());
  CHECK(g.undefined_pairs().size() == 2);

  Bigraph h = g.set_edge(FunLabel{0}, AtomLabel{1}, false);
  CHECK(h.edge(FunLabel{0}, AtomLabel{1}) == Edge::kFalse);
  CHECK(g.edge(FunLabel{0}, AtomLabel{1}) == Edge::kUndef);
  CHECK_THROWS_AS(h.set_edge(FunLabel{0}, AtomLabel{1}, true), BigraphError);
  CHECK_THROWS_AS(g.edge(FunLabel{5}, AtomLabel{0}), BigraphError);

  auto [g2, a] = g.add_right_undef();
  CHECK(g2.edge(FunLabel{1}, a) == Edge::kUndef);
  auto [g3, f] = g.add_left_undef();
  CHECK(g3.edge(f, AtomLabel{0}) == Edge::kUndef);
}

TEST_CASE("completions enumerate every assignment of the undefined pairs") {
  Bigraph g = two_by_two();
  auto all = g.completions();
  REQUIRE(all.size() == 4);
  for (size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].first.is_total());
    CHECK(all[i].second.size() == 2);
    auto pairs = g.undefined_pairs();
    for (size_t k = 0; k < pairs.size(); ++k) {
      bool bit = (i >> k) & 1;
      CHECK(all[i].second[k] == bit);
      CHECK(all[i].first.edge(pairs[k].first, pairs[k].second) == edge_of(bit));
    }
  }
  CHECK_THROWS_AS(g.completions(1), BigraphError);
}

TEST_CASE("MEMLANG_MAX_UNDEF overrides the default bound") {
  setenv("MEMLANG_MAX_UNDEF", "7", 1);
  CHECK(max_undefined_from_env() == 7);
  unsetenv("MEMLANG_MAX_UNDEF");
  CHECK(max_undefined_from_env() == kDefaultMaxUndefined);
}

TEST_CASE("restriction and canonical relabeling") {
  Bigraph g = two_by_two();
  Bigraph r = g.restrict({FunLabel{1}}, {AtomLabel{1}});
  CHECK(r.left().size() == 1);
  CHECK(r.edge(FunLabel{1}, AtomLabel{1}) == Edge::kFalse);

  Bigraph base;
  base.add_atom({});
  Bigraph c = g.canonical_relabel(base.restrict({}, {AtomLabel{0}}), {FunLabel{1}, FunLabel{0}},
                                  {AtomLabel{1}});
  // f1 becomes f0 and f0 becomes f1.
  CHECK(c.edge(FunLabel{0}, AtomLabel{1}) == Edge::kFalse);
  CHECK(c.edge(FunLabel{1}, AtomLabel{0}) == Edge::kTrue);
}

TEST_CASE("inclusions are embeddings only when edges agree") {
  Bigraph g = two_by_two().restrict({FunLabel{0}}, {AtomLabel{0}});
  Bigraph h = two_by_two();
  CHECK(is_embedding(Embedding::inclusion(g, h)));
  CHECK(is_embedding(Embedding::identity(h)));
  Bigraph changed = h;
  changed.put_edge(FunLabel{0}, AtomLabel{0}, Edge::kFalse);
  CHECK_FALSE(is_embedding(Embedding::inclusion(g, changed)));
}

TEST_CASE("pushout leaves exactly the cross pairs undetermined") {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 30; ++trial) {
    Bigraph g;
    g.add_atom({});
    g.add_fun({edge_of(bit(rng))});
    Bigraph h = g;
    h.add_fun({edge_of(bit(rng))});
    if (bit(rng)) h.add_atom({edge_of(bit(rng)), edge_of(bit(rng))});
    Bigraph g2 = g;
    g2.add_atom({edge_of(bit(rng))});
    if (bit(rng)) g2.add_fun({edge_of(bit(rng)), edge_of(bit(rng))});

    Pushout po = pushout(Embedding::inclusion(g, h), Embedding::inclusion(g, g2));
    CHECK(is_embedding(po.from_h));
    CHECK(is_embedding(po.from_g2));
    size_t new_h_f = h.left().size() - 1, new_h_a = h.right().size() - 1;
    size_t new_2_f = g2.left().size() - 1, new_2_a = g2.right().size() - 1;
    CHECK(po.graph.left().size() == 1 + new_h_f + new_2_f);
    CHECK(po.graph.right().size() == 1 + new_h_a + new_2_a);
    CHECK(po.cross_pairs.size() == new_h_f * new_2_a + new_2_f * new_h_a);
    auto undef = po.graph.undefined_pairs();
    std::set<std::pair<FunLabel, AtomLabel>> a(undef.begin(), undef.end());
    std::set<std::pair<FunLabel, AtomLabel>> b(po.cross_pairs.begin(), po.cross_pairs.end());
    CHECK(a == b);
    for (FunLabel f : g2.left()) CHECK(po.from_g2(f) == f);
  }
}
