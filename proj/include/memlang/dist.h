// Finitely supported probability distributions with exact weights.

#ifndef MEMLANG_DIST_H_
#define MEMLANG_DIST_H_

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "memlang/errors.h"
#include "memlang/rational.h"

namespace memlang {

template <typename T, typename Less = std::less<T>>
class FinDist {
 public:
  using Map = std::map<T, Rat, Less>;

  // The empty map is only a builder state; every public constructor below
  // yields total mass one.
  FinDist() = default;

  static FinDist dirac(T x) {
    FinDist d;
    d.weights_.emplace(std::move(x), Rat(1));
    return d;
  }

  // Accepts any weights > 0 summing to exactly 1; drops zero weights.
  static FinDist from_weights(const std::vector<std::pair<T, Rat>>& entries) {
    FinDist d;
    for (const auto& [x, p] : entries) d.add(x, p);
    d.check_mass();
    return d;
  }

  const Map& weights() const { return weights_; }
  size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }

  Rat prob(const T& x) const {
    auto it = weights_.find(x);
    return it == weights_.end() ? Rat(0) : it->second;
  }

  Rat mass() const {
    Rat total = 0;
    for (const auto& kv : weights_) total += kv.second;
    return total;
  }

  // Accumulates weight without normalization checks; zero is ignored.
  void add(const T& x, const Rat& p) {
    if (p < 0) throw MassError("negative weight " + rat_to_string(p));
    if (p == 0) return;
    auto [it, inserted] = weights_.emplace(x, p);
    if (!inserted) it->second += p;
  }

  void check_mass() const {
    Rat m = mass();
    if (m != 1) throw MassError("distribution mass is " + rat_to_string(m) + ", expected 1");
  }

  bool operator==(const FinDist& other) const {
    if (weights_.size() != other.weights_.size()) return false;
    auto a = weights_.begin();
    auto b = other.weights_.begin();
    Less less;
    for (; a != weights_.end(); ++a, ++b) {
      if (less(a->first, b->first) || less(b->first, a->first)) return false;
      if (a->second != b->second) return false;
    }
    return true;
  }

 private:
  Map weights_;
};

template <typename T, typename Less>
FinDist<T, Less> dirac(T x) {
  return FinDist<T, Less>::dirac(std::move(x));
}

template <typename T>
FinDist<T> dirac(T x) {
  return FinDist<T>::dirac(std::move(x));
}

// Convex combination. Branch weights must sum to exactly 1.
template <typename T, typename Less>
FinDist<T, Less> weighted_mix(const std::vector<std::pair<Rat, FinDist<T, Less>>>& branches) {
  Rat total = 0;
  FinDist<T, Less> out;
  for (const auto& [w, d] : branches) {
    if (w < 0) throw MassError("negative branch weight " + rat_to_string(w));
    total += w;
    if (w == 0) continue;
    for (const auto& [x, p] : d.weights()) out.add(x, w * p);
  }
  if (total != 1) {
    throw MassError("branch weights sum to " + rat_to_string(total) + ", expected 1");
  }
  out.check_mass();
  return out;
}

template <typename U, typename ULess = std::less<U>, typename T, typename Less, typename F>
FinDist<U, ULess> map_dist(const FinDist<T, Less>& d, F&& f) {
  FinDist<U, ULess> out;
  for (const auto& [x, p] : d.weights()) out.add(f(x), p);
  out.check_mass();
  return out;
}

template <typename U, typename ULess = std::less<U>, typename T, typename Less, typename K>
FinDist<U, ULess> bind_dist(const FinDist<T, Less>& d, K&& k) {
  FinDist<U, ULess> out;
  for (const auto& [x, p] : d.weights()) {
    FinDist<U, ULess> inner = k(x);
    for (const auto& [y, q] : inner.weights()) out.add(y, p * q);
  }
  out.check_mass();
  return out;
}

template <typename T, typename Less>
bool dist_eq(const FinDist<T, Less>& a, const FinDist<T, Less>& b) {
  return a == b;
}

}  // namespace memlang

#endif  // MEMLANG_DIST_H_
