#include <doctest.h>

#include <random>
#include <string>

#include "memlang/dist.h"
#include "memlang/errors.h"

using namespace memlang;

namespace {

FinDist<int> random_dist(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(1, 4), v(0, 5), w(1, 6);
  std::vector<std::pair<int, Rat>> raw;
  Rat total = 0;
  int k = n(rng);
  for (int i = 0; i < k; ++i) {
    Rat x = w(rng);
    raw.emplace_back(v(rng), x);
    total += x;
  }
  FinDist<int> d;
  for (auto& [x, p] : raw) d.add(x, p / total);
  return d;
}

}  // namespace

TEST_CASE("dirac and merging of equal outcomes") {
  FinDist<int> d;
  d.add(1, Rat(1, 4));
  d.add(1, Rat(1, 4));
  d.add(2, Rat(1, 2));
  d.add(3, Rat(0));
  CHECK(d.size() == 2);
  CHECK(d.prob(1) == Rat(1, 2));
  CHECK(d.prob(3) == 0);
  CHECK_NOTHROW(d.check_mass());
  CHECK(dirac(7).prob(7) == 1);
}

TEST_CASE("mass errors") {
  FinDist<int> d;
  CHECK_THROWS_AS(d.add(1, Rat(-1, 2)), MassError);
  d.add(1, Rat(1, 3));
  CHECK_THROWS_AS(d.check_mass(), MassError);
  std::vector<std::pair<Rat, FinDist<int>>> bad = {{Rat(1, 2), dirac(1)}, {Rat(1, 3), dirac(2)}};
  CHECK_THROWS_AS(weighted_mix(bad), MassError);
}

TEST_CASE("weighted_mix matches a hand computation") {
  std::vector<std::pair<Rat, FinDist<int>>> branches = {
      {Rat(1, 3), FinDist<int>::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}})},
      {Rat(2, 3), dirac(1)}};
  FinDist<int> d = weighted_mix(branches);
  CHECK(d.prob(0) == Rat(1, 6));
  CHECK(d.prob(1) == Rat(5, 6));
}

TEST_CASE("monad laws for finite distributions") {
  std::mt19937_64 rng(5);
  auto k = [](int x) {
    return FinDist<int>::from_weights({{x, Rat(1, 3)}, {x + 1, Rat(2, 3)}});
  };
  auto l = [](int y) { return y % 2 == 0 ? dirac(y / 2) : FinDist<int>::from_weights({{0, Rat(1, 2)}, {y, Rat(1, 2)}}); };
  for (int i = 0; i < 50; ++i) {
    FinDist<int> m = random_dist(rng);
    CHECK(dist_eq(bind_dist<int>(dirac(3), k), k(3)));
    CHECK(dist_eq(bind_dist<int>(m, [](int x) { return dirac(x); }), m));
    CHECK(dist_eq(bind_dist<int>(bind_dist<int>(m, k), l),
                  bind_dist<int>(m, [&](int x) { return bind_dist<int>(k(x), l); })));
    CHECK(map_dist<std::string>(m, [](int x) { return std::to_string(x); }).mass() == 1);
  }
}
