// Memo-table graphs. Left nodes are function labels, right nodes are atom
// labels; every (function, atom) pair carries true, false, or undef.
// A total bigraph has no undef entries and is a world of the denotational
// semantics.

#ifndef MEMLANG_BIGRAPH_H_
#define MEMLANG_BIGRAPH_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memlang {

struct FunLabel {
  uint32_t id = 0;
  auto operator<=>(const FunLabel&) const = default;
};

struct AtomLabel {
  uint32_t id = 0;
  auto operator<=>(const AtomLabel&) const = default;
};

enum class Edge : uint8_t { kFalse = 0, kTrue = 1, kUndef = 2 };

inline Edge edge_of(bool b) { return b ? Edge::kTrue : Edge::kFalse; }
const char* edge_name(Edge e);

// Default bound on |undefined pairs| for completion enumeration.
inline constexpr size_t kDefaultMaxUndefined = 20;

// Reads MEMLANG_MAX_UNDEF, falling back to kDefaultMaxUndefined.
size_t max_undefined_from_env();

class Bigraph {
 public:
  Bigraph() = default;

  static Bigraph empty() { return Bigraph(); }

  const std::vector<FunLabel>& left() const { return left_; }
  const std::vector<AtomLabel>& right() const { return right_; }

  bool has_fun(FunLabel f) const;
  bool has_atom(AtomLabel a) const;

  // Label one past the largest label on each side (0 for an empty side).
  FunLabel next_fun() const;
  AtomLabel next_atom() const;

  // Throws BigraphError(kUnknownLabel) for labels outside the graph.
  Edge edge(FunLabel f, AtomLabel a) const;

  bool is_total() const;

  // New atom with an undef edge to every existing function.
  std::pair<Bigraph, AtomLabel> add_right_undef() const;
  // New function with an undef edge to every existing atom.
  std::pair<Bigraph, FunLabel> add_left_undef() const;

  // In-place variants used by the evaluators. `column` has one entry per
  // existing function (in left() order); `row` one per existing atom.
  AtomLabel add_atom(const std::vector<Edge>& column);
  FunLabel add_fun(const std::vector<Edge>& row);
  AtomLabel add_atom_with(Edge fill);
  FunLabel add_fun_with(Edge fill);

  // Pure update of an undef edge. Throws kEdgeAlreadyDefined otherwise.
  Bigraph set_edge(FunLabel f, AtomLabel a, bool b) const;
  // In-place overwrite without the undef precondition.
  void put_edge(FunLabel f, AtomLabel a, Edge e);

  std::vector<std::pair<FunLabel, AtomLabel>> undefined_pairs() const;

  // All total extensions, ordered by the binary counter over
  // undefined_pairs() (first pair is the least significant bit). Throws
  // kTooManyUndefined past max_undefined.
  std::vector<std::pair<Bigraph, std::vector<bool>>> completions(
      size_t max_undefined = kDefaultMaxUndefined) const;

  // Induced subgraph. Throws kUnknownLabel if a kept label is absent.
  Bigraph restrict(const std::vector<FunLabel>& keep_left,
                   const std::vector<AtomLabel>& keep_right) const;

  // Renames labels; maps must be injective and cover every node.
  Bigraph relabel(const std::map<FunLabel, FunLabel>& fmap,
                  const std::map<AtomLabel, AtomLabel>& amap) const;

  // Keeps `base` labels and renumbers the remaining nodes of each side
  // consecutively from base.next_*(), following the given order. The order
  // must list exactly the nodes that are not in base.
  Bigraph canonical_relabel(const Bigraph& base, const std::vector<FunLabel>& fresh_left,
                            const std::vector<AtomLabel>& fresh_right) const;

  auto operator<=>(const Bigraph&) const = default;
  bool operator==(const Bigraph&) const = default;

  std::string to_string() const;

 private:
  size_t fun_index(FunLabel f) const;
  size_t atom_index(AtomLabel a) const;
  Edge& at(size_t fi, size_t ai) { return edges_[fi * right_.size() + ai]; }
  Edge at(size_t fi, size_t ai) const { return edges_[fi * right_.size() + ai]; }

  std::vector<FunLabel> left_;    // ascending
  std::vector<AtomLabel> right_;  // ascending
  std::vector<Edge> edges_;       // row-major, left_.size() x right_.size()
};

// Strong type for worlds: a bigraph with no undef edge.
class TotalBigraph {
 public:
  TotalBigraph() = default;
  // Throws BigraphError(kNotTotal).
  explicit TotalBigraph(Bigraph g);

  const Bigraph& graph() const { return g_; }
  operator const Bigraph&() const { return g_; }
  bool edge(FunLabel f, AtomLabel a) const { return g_.edge(f, a) == Edge::kTrue; }

  auto operator<=>(const TotalBigraph&) const = default;
  bool operator==(const TotalBigraph&) const = default;

 private:
  Bigraph g_;
};

// A pair of injections that preserves every edge value.
struct Embedding {
  Bigraph source;
  Bigraph target;
  std::map<FunLabel, FunLabel> left;
  std::map<AtomLabel, AtomLabel> right;

  static Embedding identity(const Bigraph& g);
  // Subset inclusion of g into h (labels unchanged).
  static Embedding inclusion(const Bigraph& g, const Bigraph& h);

  FunLabel operator()(FunLabel f) const { return left.at(f); }
  AtomLabel operator()(AtomLabel a) const { return right.at(a); }
};

bool is_embedding(const Embedding& e);

// Pushout of h <- g -> g2 along embeddings sharing the source g. Nodes of
// g2 keep their labels; nodes of h outside the image of g get new labels
// after g2's. Pairs between the new nodes of h and the new nodes of g2 are
// not determined by either leg and are left undef in the result.
struct Pushout {
  Bigraph graph;
  Embedding from_h;
  Embedding from_g2;
  std::vector<std::pair<FunLabel, AtomLabel>> cross_pairs;
};

Pushout pushout(const Embedding& to_h, const Embedding& to_g2);

}  // namespace memlang

#endif  // MEMLANG_BIGRAPH_H_
