#include "memlang/bigraph.h"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "memlang/errors.h"

namespace memlang {

const char* edge_name(Edge e) {
  switch (e) {
    case Edge::kFalse:
      return "false";
    case Edge::kTrue:
      return "true";
    case Edge::kUndef:
      return "undef";
  }
  return "?";
}

size_t max_undefined_from_env() {
  if (const char* s = std::getenv("MEMLANG_MAX_UNDEF")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0') return static_cast<size_t>(v);
  }
  return kDefaultMaxUndefined;
}

bool Bigraph::has_fun(FunLabel f) const {
  return std::binary_search(left_.begin(), left_.end(), f);
}

bool Bigraph::has_atom(AtomLabel a) const {
  return std::binary_search(right_.begin(), right_.end(), a);
}

FunLabel Bigraph::next_fun() const {
  return left_.empty() ? FunLabel{0} : FunLabel{left_.back().id + 1};
}

AtomLabel Bigraph::next_atom() const {
  return right_.empty() ? AtomLabel{0} : AtomLabel{right_.back().id + 1};
}

size_t Bigraph::fun_index(FunLabel f) const {
  auto it = std::lower_bound(left_.begin(), left_.end(), f);
  if (it == left_.end() || *it != f) {
    throw BigraphError(BigraphError::Kind::kUnknownLabel,
                       "unknown function label f" + std::to_string(f.id));
  }
  return static_cast<size_t>(it - left_.begin());
}

size_t Bigraph::atom_index(AtomLabel a) const {
  auto it = std::lower_bound(right_.begin(), right_.end(), a);
  if (it == right_.end() || *it != a) {
    throw BigraphError(BigraphError::Kind::kUnknownLabel,
                       "unknown atom label a" + std::to_string(a.id));
  }
  return static_cast<size_t>(it - right_.begin());
}

Edge Bigraph::edge(FunLabel f, AtomLabel a) const { return at(fun_index(f), atom_index(a)); }

bool Bigraph::is_total() const {
  return std::none_of(edges_.begin(), edges_.end(), [](Edge e) { return e == Edge::kUndef; });
}

AtomLabel Bigraph::add_atom(const std::vector<Edge>& column) {
  AtomLabel a = next_atom();
  size_t old_cols = right_.size();
  std::vector<Edge> grown;
  grown.reserve(left_.size() * (old_cols + 1));
  for (size_t fi = 0; fi < left_.size(); ++fi) {
    for (size_t ai = 0; ai < old_cols; ++ai) grown.push_back(edges_[fi * old_cols + ai]);
    grown.push_back(column.at(fi));
  }
  right_.push_back(a);
  edges_ = std::move(grown);
  return a;
}

FunLabel Bigraph::add_fun(const std::vector<Edge>& row) {
  if (row.size() != right_.size()) {
    throw BigraphError(BigraphError::Kind::kUnknownLabel, "row length mismatch");
  }
  FunLabel f = next_fun();
  left_.push_back(f);
  edges_.insert(edges_.end(), row.begin(), row.end());
  return f;
}

AtomLabel Bigraph::add_atom_with(Edge fill) {
  return add_atom(std::vector<Edge>(left_.size(), fill));
}

FunLabel Bigraph::add_fun_with(Edge fill) {
  return add_fun(std::vector<Edge>(right_.size(), fill));
}

std::pair<Bigraph, AtomLabel> Bigraph::add_right_undef() const {
  Bigraph g = *this;
  AtomLabel a = g.add_atom_with(Edge::kUndef);
  return {std::move(g), a};
}

std::pair<Bigraph, FunLabel> Bigraph::add_left_undef() const {
  Bigraph g = *this;
  FunLabel f = g.add_fun_with(Edge::kUndef);
  return {std::move(g), f};
}

Bigraph Bigraph::set_edge(FunLabel f, AtomLabel a, bool b) const {
  Bigraph g = *this;
  Edge& e = g.at(fun_index(f), atom_index(a));
  if (e != Edge::kUndef) {
    throw BigraphError(BigraphError::Kind::kEdgeAlreadyDefined,
                       "edge (f" + std::to_string(f.id) + ", a" + std::to_string(a.id) +
                           ") is already defined");
  }
  e = edge_of(b);
  return g;
}

void Bigraph::put_edge(FunLabel f, AtomLabel a, Edge e) { at(fun_index(f), atom_index(a)) = e; }

std::vector<std::pair<FunLabel, AtomLabel>> Bigraph::undefined_pairs() const {
  std::vector<std::pair<FunLabel, AtomLabel>> out;
  for (size_t fi = 0; fi < left_.size(); ++fi) {
    for (size_t ai = 0; ai < right_.size(); ++ai) {
      if (at(fi, ai) == Edge::kUndef) out.emplace_back(left_[fi], right_[ai]);
    }
  }
  return out;
}

std::vector<std::pair<Bigraph, std::vector<bool>>> Bigraph::completions(
    size_t max_undefined) const {
  auto pairs = undefined_pairs();
  if (pairs.size() > max_undefined) {
    throw BigraphError(BigraphError::Kind::kTooManyUndefined,
                       std::to_string(pairs.size()) + " undefined edges exceed the limit of " +
                           std::to_string(max_undefined));
  }
  std::vector<std::pair<Bigraph, std::vector<bool>>> out;
  const uint64_t count = uint64_t{1} << pairs.size();
  out.reserve(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    Bigraph g = *this;
    std::vector<bool> assignment(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      assignment[i] = (mask >> i) & 1;
      g.put_edge(pairs[i].first, pairs[i].second, edge_of(assignment[i]));
    }
    out.emplace_back(std::move(g), std::move(assignment));
  }
  return out;
}

Bigraph Bigraph::restrict(const std::vector<FunLabel>& keep_left,
                          const std::vector<AtomLabel>& keep_right) const {
  std::set<FunLabel> kl(keep_left.begin(), keep_left.end());
  std::set<AtomLabel> kr(keep_right.begin(), keep_right.end());
  Bigraph out;
  out.left_.assign(kl.begin(), kl.end());
  out.right_.assign(kr.begin(), kr.end());
  std::vector<size_t> fi;
  std::vector<size_t> ai;
  for (FunLabel f : out.left_) fi.push_back(fun_index(f));
  for (AtomLabel a : out.right_) ai.push_back(atom_index(a));
  out.edges_.reserve(fi.size() * ai.size());
  for (size_t i : fi) {
    for (size_t j : ai) out.edges_.push_back(at(i, j));
  }
  return out;
}

Bigraph Bigraph::relabel(const std::map<FunLabel, FunLabel>& fmap,
                         const std::map<AtomLabel, AtomLabel>& amap) const {
  std::vector<std::pair<FunLabel, size_t>> lf;
  std::vector<std::pair<AtomLabel, size_t>> ra;
  for (size_t i = 0; i < left_.size(); ++i) lf.emplace_back(fmap.at(left_[i]), i);
  for (size_t j = 0; j < right_.size(); ++j) ra.emplace_back(amap.at(right_[j]), j);
  std::sort(lf.begin(), lf.end());
  std::sort(ra.begin(), ra.end());
  Bigraph out;
  for (auto& [f, i] : lf) out.left_.push_back(f);
  for (auto& [a, j] : ra) out.right_.push_back(a);
  if (std::adjacent_find(out.left_.begin(), out.left_.end()) != out.left_.end() ||
      std::adjacent_find(out.right_.begin(), out.right_.end()) != out.right_.end()) {
    throw BigraphError(BigraphError::Kind::kNotEmbedding, "relabeling is not injective");
  }
  out.edges_.reserve(edges_.size());
  for (auto& [f, i] : lf) {
    for (auto& [a, j] : ra) out.edges_.push_back(at(i, j));
  }
  return out;
}

Bigraph Bigraph::canonical_relabel(const Bigraph& base, const std::vector<FunLabel>& fresh_left,
                                   const std::vector<AtomLabel>& fresh_right) const {
  std::map<FunLabel, FunLabel> fmap;
  std::map<AtomLabel, AtomLabel> amap;
  for (FunLabel f : base.left()) fmap[f] = f;
  for (AtomLabel a : base.right()) amap[a] = a;
  uint32_t nf = base.next_fun().id;
  uint32_t na = base.next_atom().id;
  for (FunLabel f : fresh_left) fmap[f] = FunLabel{nf++};
  for (AtomLabel a : fresh_right) amap[a] = AtomLabel{na++};
  if (fmap.size() != left_.size() || amap.size() != right_.size()) {
    throw BigraphError(BigraphError::Kind::kUnknownLabel,
                       "canonical order does not cover the non-base nodes");
  }
  return relabel(fmap, amap);
}

std::string Bigraph::to_string() const {
  std::string s = "({";
  for (size_t i = 0; i < left_.size(); ++i) s += (i ? ", f" : "f") + std::to_string(left_[i].id);
  s += "}, {";
  for (size_t j = 0; j < right_.size(); ++j) {
    s += (j ? ", a" : "a") + std::to_string(right_[j].id);
  }
  s += "}, {";
  bool first = true;
  for (size_t i = 0; i < left_.size(); ++i) {
    for (size_t j = 0; j < right_.size(); ++j) {
      if (!first) s += ", ";
      first = false;
      s += "f" + std::to_string(left_[i].id) + " -" + edge_name(at(i, j)) + "-> a" +
           std::to_string(right_[j].id);
    }
  }
  return s + "})";
}

TotalBigraph::TotalBigraph(Bigraph g) : g_(std::move(g)) {
  if (!g_.is_total()) {
    throw BigraphError(BigraphError::Kind::kNotTotal, "bigraph has undefined edges");
  }
}

Embedding Embedding::identity(const Bigraph& g) { return inclusion(g, g); }

Embedding Embedding::inclusion(const Bigraph& g, const Bigraph& h) {
  Embedding e{g, h, {}, {}};
  for (FunLabel f : g.left()) e.left[f] = f;
  for (AtomLabel a : g.right()) e.right[a] = a;
  return e;
}

bool is_embedding(const Embedding& e) {
  if (e.left.size() != e.source.left().size() || e.right.size() != e.source.right().size()) {
    return false;
  }
  std::set<FunLabel> seen_f;
  std::set<AtomLabel> seen_a;
  for (FunLabel f : e.source.left()) {
    auto it = e.left.find(f);
    if (it == e.left.end() || !e.target.has_fun(it->second)) return false;
    if (!seen_f.insert(it->second).second) return false;
  }
  for (AtomLabel a : e.source.right()) {
    auto it = e.right.find(a);
    if (it == e.right.end() || !e.target.has_atom(it->second)) return false;
    if (!seen_a.insert(it->second).second) return false;
  }
  for (FunLabel f : e.source.left()) {
    for (AtomLabel a : e.source.right()) {
      if (e.source.edge(f, a) != e.target.edge(e.left.at(f), e.right.at(a))) return false;
    }
  }
  return true;
}

Pushout pushout(const Embedding& to_h, const Embedding& to_g2) {
  if (!(to_h.source == to_g2.source)) {
    throw BigraphError(BigraphError::Kind::kNotEmbedding, "pushout legs have different sources");
  }
  const Bigraph& h = to_h.target;
  const Bigraph& g2 = to_g2.target;

  // Nodes of h in the image of g map to the corresponding g2 node.
  std::map<FunLabel, FunLabel> h_to_out_f;
  std::map<AtomLabel, AtomLabel> h_to_out_a;
  for (auto& [gf, hf] : to_h.left) h_to_out_f[hf] = to_g2.left.at(gf);
  for (auto& [ga, ha] : to_h.right) h_to_out_a[ha] = to_g2.right.at(ga);

  std::set<FunLabel> g2_image_f;
  std::set<AtomLabel> g2_image_a;
  for (auto& [gf, f2] : to_g2.left) g2_image_f.insert(f2);
  for (auto& [ga, a2] : to_g2.right) g2_image_a.insert(a2);

  Bigraph out = g2;
  std::vector<FunLabel> h_new_f;
  std::vector<AtomLabel> h_new_a;
  for (FunLabel f : h.left()) {
    if (!h_to_out_f.count(f)) h_new_f.push_back(f);
  }
  for (AtomLabel a : h.right()) {
    if (!h_to_out_a.count(a)) h_new_a.push_back(a);
  }
  for (AtomLabel a : h_new_a) h_to_out_a[a] = out.add_atom_with(Edge::kUndef);
  for (FunLabel f : h_new_f) h_to_out_f[f] = out.add_fun_with(Edge::kUndef);

  // Edges from h: every pair with at least one h-new endpoint and both
  // endpoints in h.
  for (FunLabel f : h.left()) {
    for (AtomLabel a : h.right()) {
      bool f_new = std::find(h_new_f.begin(), h_new_f.end(), f) != h_new_f.end();
      bool a_new = std::find(h_new_a.begin(), h_new_a.end(), a) != h_new_a.end();
      if (f_new || a_new) out.put_edge(h_to_out_f.at(f), h_to_out_a.at(a), h.edge(f, a));
    }
  }

  Pushout po;
  for (FunLabel f : h_new_f) {
    for (AtomLabel a : g2.right()) {
      if (!g2_image_a.count(a)) po.cross_pairs.emplace_back(h_to_out_f.at(f), a);
    }
  }
  for (FunLabel f : g2.left()) {
    if (g2_image_f.count(f)) continue;
    for (AtomLabel a : h_new_a) po.cross_pairs.emplace_back(f, h_to_out_a.at(a));
  }
  po.from_h = Embedding{h, out, h_to_out_f, h_to_out_a};
  po.from_g2 = Embedding::inclusion(g2, out);
  po.graph = std::move(out);
  return po;
}

}  // namespace memlang
