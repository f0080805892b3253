#include "memlang/denot.h"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <set>

#include "memlang/errors.h"

namespace memlang {

namespace {

bool contains(const std::vector<FunLabel>& v, FunLabel f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

bool contains(const std::vector<AtomLabel>& v, AtomLabel a) {
  return std::find(v.begin(), v.end(), a) != v.end();
}

// Weight of one assignment of independent Bernoulli bits.
Rat bernoulli_weight(const std::vector<Rat>& probs, uint64_t mask) {
  Rat w = 1;
  for (size_t i = 0; i < probs.size(); ++i) {
    w *= ((mask >> i) & 1) ? probs[i] : Rat(1 - probs[i]);
    if (w == 0) break;
  }
  return w;
}

void check_bits(size_t n) {
  size_t limit = max_undefined_from_env();
  if (n > limit) {
    throw BigraphError(BigraphError::Kind::kTooManyUndefined,
                       std::to_string(n) + " independent edges exceed the limit of " +
                           std::to_string(limit));
  }
}

Biases merged(const Biases& a, const Biases& b) {
  Biases out = a;
  out.insert(b.begin(), b.end());
  return out;
}

std::string biases_to_string(const Biases& b) {
  std::string s = "{";
  bool first = true;
  for (const auto& [f, p] : b) {
    if (!first) s += ", ";
    first = false;
    s += "f" + std::to_string(f.id) + ": " + rat_to_string(p);
  }
  return s + "}";
}

void check_shapes(const Bigraph& g, const ClassDist& d, const DenOptions& options) {
  if (!options.check_shapes) return;
  if (options.stats) ++options.stats->distributions;
  for (const auto& [cls, p] : d.weights()) {
    size_t fresh_funs = cls.world.left().size() - g.left().size();
    size_t fresh_atoms = cls.world.right().size() - g.right().size();
    switch (cls.value.kind()) {
      case EnvValue::Kind::kBool:
        if (fresh_funs || fresh_atoms) {
          throw DenotationError("boolean class keeps fresh nodes: " + cls.key());
        }
        if (options.stats) ++options.stats->bool_classes;
        break;
      case EnvValue::Kind::kAtom:
        if (fresh_funs || fresh_atoms > 1) {
          throw DenotationError("atom class has an unexpected shape: " + cls.key());
        }
        if (options.stats) ++options.stats->atom_classes;
        break;
      case EnvValue::Kind::kFun:
        if (fresh_atoms || fresh_funs > 1 || cls.fresh_biases.size() != fresh_funs) {
          throw DenotationError("function class has an unexpected shape: " + cls.key());
        }
        if (options.stats) ++options.stats->fun_classes;
        break;
      case EnvValue::Kind::kPair:
        break;
    }
    if (options.stats) ++options.stats->classes;
  }
}

ClassDist dirac_class(const Bigraph& g, const EnvValue& v) {
  return ClassDist::dirac(canonicalize(g, g, v, {}));
}

ClassDist bool_dist(const Bigraph& g, const Rat& p_true) {
  ClassDist d;
  d.add(canonicalize(g, g, EnvValue::boolean(true), {}), p_true);
  d.add(canonicalize(g, g, EnvValue::boolean(false), {}), 1 - p_true);
  d.check_mass();
  return d;
}

ClassDist fresh_dist(const Bigraph& g, const Biases& lambda) {
  const size_t n = g.left().size();
  check_bits(n);
  std::vector<Rat> probs;
  for (FunLabel f : g.left()) probs.push_back(lambda.at(f));
  ClassDist d;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    Rat w = bernoulli_weight(probs, mask);
    if (w == 0) continue;
    std::vector<Edge> column;
    for (size_t i = 0; i < n; ++i) column.push_back(edge_of((mask >> i) & 1));
    Bigraph h = g;
    AtomLabel a = h.add_atom(column);
    d.add(CoendClass{std::move(h), EnvValue::atom(a), {}}, w);
  }
  d.check_mass();
  return d;
}

// Probability that the body is true on a fresh argument; the same for
// every connectivity of that argument, or FreshnessViolation.
Rat freshness_bias(const Bigraph& g, const Env& env, const Ident& binder, const CompPtr& body,
                   const Biases& lambda, const DenOptions& options) {
  const size_t n = g.left().size();
  check_bits(n);
  std::optional<Rat> first;
  std::vector<bool> first_bits;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    std::vector<Edge> column;
    std::vector<bool> bits;
    for (size_t i = 0; i < n; ++i) {
      bits.push_back((mask >> i) & 1);
      column.push_back(edge_of(bits.back()));
    }
    Bigraph h = g;
    AtomLabel a = h.add_atom(column);
    Env inner = env;
    inner[binder] = EnvValue::atom(a);
    Rat q = prob_true(den_comp(*body, h, inner, lambda, options));
    if (!first) {
      first = q;
      first_bits = bits;
    } else if (q != *first) {
      throw FreshnessViolation(pretty(*c_memfn(binder, body)), first_bits, rat_to_fraction(*first),
                               bits, rat_to_fraction(q));
    }
  }
  return *first;
}

using ClassKleisli =
    std::function<ClassDist(const Bigraph& h, const EnvValue& x, const Biases& lambda_h)>;

ClassDist bind_classes(const Bigraph& g, const ClassDist& m, const Biases& lambda,
                       const ClassKleisli& k) {
  ClassDist out;
  for (const auto& [c, p] : m.weights()) {
    ClassDist inner = k(c.world, c.value, merged(lambda, c.fresh_biases));
    for (const auto& [d, q] : inner.weights()) {
      out.add(canonicalize(g, d.world, d.value, merged(c.fresh_biases, d.fresh_biases)), p * q);
    }
  }
  out.check_mass();
  return out;
}

}  // namespace

std::string CoendClass::key() const {
  return value.to_string() + " | " + world.to_string() + " | " + biases_to_string(fresh_biases);
}

CoendClass canonicalize(const Bigraph& g, const Bigraph& h, const EnvValue& value,
                        const Biases& biases) {
  std::vector<FunLabel> fresh_f;
  std::vector<AtomLabel> fresh_a;
  value.visit_leaves([&](const EnvValue& leaf) {
    if (leaf.kind() == EnvValue::Kind::kFun) {
      FunLabel f = leaf.as_fun();
      if (!h.has_fun(f)) throw DenotationError("value mentions f" + std::to_string(f.id) + " outside its world");
      if (!g.has_fun(f) && !contains(fresh_f, f)) fresh_f.push_back(f);
    } else if (leaf.kind() == EnvValue::Kind::kAtom) {
      AtomLabel a = leaf.as_atom();
      if (!h.has_atom(a)) throw DenotationError("value mentions a" + std::to_string(a.id) + " outside its world");
      if (!g.has_atom(a) && !contains(fresh_a, a)) fresh_a.push_back(a);
    }
  });

  std::map<FunLabel, FunLabel> fmap;
  std::map<AtomLabel, AtomLabel> amap;
  uint32_t nf = g.next_fun().id;
  uint32_t na = g.next_atom().id;
  for (FunLabel f : fresh_f) fmap[f] = FunLabel{nf++};
  for (AtomLabel a : fresh_a) amap[a] = AtomLabel{na++};

  std::vector<FunLabel> keep_f = g.left();
  keep_f.insert(keep_f.end(), fresh_f.begin(), fresh_f.end());
  std::vector<AtomLabel> keep_a = g.right();
  keep_a.insert(keep_a.end(), fresh_a.begin(), fresh_a.end());

  CoendClass out;
  out.world = h.restrict(keep_f, keep_a).canonical_relabel(g, fresh_f, fresh_a);
  out.value = value.map_labels(
      [&](FunLabel f) { return g.has_fun(f) ? f : fmap.at(f); },
      [&](AtomLabel a) { return g.has_atom(a) ? a : amap.at(a); });
  for (FunLabel f : fresh_f) {
    auto it = biases.find(f);
    if (it == biases.end()) {
      throw DenotationError("fresh function f" + std::to_string(f.id) + " has no bias");
    }
    out.fresh_biases.emplace(fmap.at(f), it->second);
  }
  return out;
}

MonValue unit(const Bigraph& g, const EnvValue& value) {
  ClassDist d = dirac_class(g, value);
  return MonValue{g, [d](const Biases&) { return d; }};
}

MonValue bind(const MonValue& m, const Kleisli& k) {
  return MonValue{m.base, [m, k](const Biases& lambda) {
                    return bind_classes(m.base, m(lambda), lambda,
                                        [&](const Bigraph& h, const EnvValue& x,
                                            const Biases& lambda_h) { return k(h, x)(lambda_h); });
                  }};
}

MonValue transport(const MonValue& m, const Embedding& iota) {
  if (!(m.base == iota.source)) {
    throw DenotationError("transport along an embedding from a different world");
  }
  return MonValue{iota.target, [m, iota](const Biases& lambda_target) {
    Biases lambda;
    for (FunLabel f : iota.source.left()) lambda[f] = lambda_target.at(iota(f));
    ClassDist src = m(lambda);
    ClassDist out;
    for (const auto& [c, p] : src.weights()) {
      Pushout po = pushout(Embedding::inclusion(iota.source, c.world), iota);
      std::map<FunLabel, Rat> bias_of;
      Biases moved;
      for (const auto& [f, b] : c.fresh_biases) {
        bias_of[po.from_h(f)] = b;
        moved[po.from_h(f)] = b;
      }
      std::vector<Rat> probs;
      for (const auto& [f, a] : po.cross_pairs) {
        auto it = bias_of.find(f);
        probs.push_back(it != bias_of.end() ? it->second : lambda_target.at(f));
      }
      check_bits(probs.size());
      EnvValue value = c.value.map_labels([&](FunLabel f) { return po.from_h(f); },
                                          [&](AtomLabel a) { return po.from_h(a); });
      for (uint64_t mask = 0; mask < (uint64_t{1} << probs.size()); ++mask) {
        Rat w = bernoulli_weight(probs, mask);
        if (w == 0) continue;
        Bigraph h = po.graph;
        for (size_t i = 0; i < probs.size(); ++i) {
          h.put_edge(po.cross_pairs[i].first, po.cross_pairs[i].second, edge_of((mask >> i) & 1));
        }
        out.add(canonicalize(iota.target, h, value, moved), p * w);
      }
    }
    out.check_mass();
    return out;
  }};
}

MonValue den_flip(const Bigraph& g, const Rat& theta) {
  ClassDist d = bool_dist(g, theta);
  return MonValue{g, [d](const Biases&) { return d; }};
}

MonValue den_app(const Bigraph& g, FunLabel f, AtomLabel a) {
  Edge e = g.edge(f, a);
  if (e == Edge::kUndef) throw DenotationError("application on an undefined edge");
  return unit(g, EnvValue::boolean(e == Edge::kTrue));
}

MonValue den_eq(const Bigraph& g, AtomLabel a1, AtomLabel a2) {
  return unit(g, EnvValue::boolean(a1 == a2));
}

MonValue den_fresh(const Bigraph& g) {
  return MonValue{g, [g](const Biases& lambda) { return fresh_dist(g, lambda); }};
}

Rat prob_true(const ClassDist& d) {
  Rat p = 0;
  for (const auto& [c, w] : d.weights()) {
    if (c.value.kind() != EnvValue::Kind::kBool || !c.fresh_biases.empty()) {
      throw DenotationError("expected a boolean class, found " + c.key());
    }
    if (c.value.as_bool()) p += w;
  }
  return p;
}

ClassDist den_mem(const Bigraph& g, const Env& env, const Ident& binder, const CompPtr& body,
                  const Biases& lambda, const DenOptions& options) {
  Rat p_fresh = freshness_bias(g, env, binder, body, lambda, options);
  const size_t n = g.right().size();
  check_bits(n);
  std::vector<Rat> probs;
  for (AtomLabel a : g.right()) {
    Env inner = env;
    inner[binder] = EnvValue::atom(a);
    probs.push_back(prob_true(den_comp(*body, g, inner, lambda, options)));
  }
  ClassDist d;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    Rat w = bernoulli_weight(probs, mask);
    if (w == 0) continue;
    std::vector<Edge> row;
    for (size_t i = 0; i < n; ++i) row.push_back(edge_of((mask >> i) & 1));
    Bigraph h = g;
    FunLabel f = h.add_fun(row);
    d.add(CoendClass{std::move(h), EnvValue::fun(f), Biases{{f, p_fresh}}}, w);
  }
  d.check_mass();
  return d;
}

ClassDist den_comp(const Comp& c, const Bigraph& g, const Env& env, const Biases& lambda,
                   const DenOptions& options) {
  ClassDist out;
  switch (c.kind) {
    case Comp::Kind::kReturn:
      out = dirac_class(g, eval_value(env, *c.v));
      break;
    case Comp::Kind::kLet: {
      ClassDist m = den_comp(*c.first, g, env, lambda, options);
      out = bind_classes(g, m, lambda,
                         [&](const Bigraph& h, const EnvValue& x, const Biases& lambda_h) {
                           Env inner = env;
                           inner[c.var] = x;
                           return den_comp(*c.second, h, inner, lambda_h, options);
                         });
      break;
    }
    case Comp::Kind::kIf: {
      EnvValue b = eval_value(env, *c.v);
      if (b.kind() != EnvValue::Kind::kBool) throw DenotationError("if on a non-boolean");
      out = den_comp(b.as_bool() ? *c.first : *c.second, g, env, lambda, options);
      break;
    }
    case Comp::Kind::kMatch: {
      EnvValue p = eval_value(env, *c.v);
      if (p.kind() != EnvValue::Kind::kPair) throw DenotationError("match on a non-pair");
      Env inner = env;
      inner[c.var] = p.fst();
      inner[c.var2] = p.snd();
      out = den_comp(*c.first, g, inner, lambda, options);
      break;
    }
    case Comp::Kind::kFlip:
      out = bool_dist(g, c.theta);
      break;
    case Comp::Kind::kFresh:
      out = fresh_dist(g, lambda);
      break;
    case Comp::Kind::kEq:
      out = dirac_class(g, EnvValue::boolean(eval_value(env, *c.v) == eval_value(env, *c.w)));
      break;
    case Comp::Kind::kMemFn:
      out = den_mem(g, env, c.var, c.first, lambda, options);
      break;
    case Comp::Kind::kApp: {
      EnvValue f = eval_value(env, *c.v);
      EnvValue a = eval_value(env, *c.w);
      if (f.kind() != EnvValue::Kind::kFun || a.kind() != EnvValue::Kind::kAtom) {
        throw DenotationError("ill-typed application " + pretty(c));
      }
      out = den_app(g, f.as_fun(), a.as_atom())(lambda);
      break;
    }
  }
  check_shapes(g, out, options);
  return out;
}

MonValue den_comp_value(CompPtr c, const Bigraph& g, const Env& env, const DenOptions& options) {
  DenOptions opts = options;
  return MonValue{g, [c, g, env, opts](const Biases& lambda) {
                    return den_comp(*c, g, env, lambda, opts);
                  }};
}

ClassDist denote(const Comp& p, const DenOptions& options) {
  return den_comp(p, Bigraph(), Env{}, Biases{}, options);
}

Rat mem_phi(const ClassDist& d, const Bigraph& g, const AtomQuery& query) {
  Rat total = 0;
  for (const auto& [c, p] : d.weights()) {
    if (c.value.kind() != EnvValue::Kind::kFun) {
      throw DenotationError("mem_phi expects function classes, found " + c.key());
    }
    FunLabel f = c.value.as_fun();
    bool existing = g.has_fun(f);
    Rat hit;
    if (const AtomLabel* a = std::get_if<AtomLabel>(&query)) {
      hit = c.world.edge(f, *a) == Edge::kTrue ? 1 : 0;
    } else {
      const auto& bits = std::get<std::vector<bool>>(query);
      if (existing) {
        const auto& left = g.left();
        size_t i = std::find(left.begin(), left.end(), f) - left.begin();
        hit = bits.at(i) ? 1 : 0;
      } else {
        hit = c.fresh_biases.at(f);
      }
    }
    total += p * hit;
  }
  return total;
}

namespace {

struct PartialCompletion {
  Bigraph graph;
  Rat chain_weight;
  Rat paper_weight;
  Biases biases;
};

std::vector<PartialCompletion> complete(const Configuration& c, const DenOptions& options) {
  check_bits(c.graph.undefined_pairs().size());
  const std::vector<FunLabel>& funs = c.graph.left();
  std::vector<PartialCompletion> current{{c.graph, Rat(1), Rat(1), {}}};
  for (size_t i = 0; i < funs.size(); ++i) {
    const FunLabel f = funs[i];
    const Closure& cl = c.closures.at(f);
    std::vector<FunLabel> older(funs.begin(), funs.begin() + i);
    std::vector<PartialCompletion> next;
    for (PartialCompletion& pc : current) {
      Bigraph world = pc.graph.restrict(older, pc.graph.right());
      Rat p_fresh = freshness_bias(world, cl.captured, cl.binder, cl.body, pc.biases, options);
      std::vector<AtomLabel> undef;
      std::vector<Rat> chain_probs;
      for (AtomLabel a : pc.graph.right()) {
        if (pc.graph.edge(f, a) != Edge::kUndef) continue;
        undef.push_back(a);
        Env inner = cl.captured;
        inner[cl.binder] = EnvValue::atom(a);
        chain_probs.push_back(prob_true(den_comp(*cl.body, world, inner, pc.biases, options)));
      }
      std::vector<Rat> paper_probs(undef.size(), p_fresh);
      Biases biases = pc.biases;
      biases[f] = p_fresh;
      for (uint64_t mask = 0; mask < (uint64_t{1} << undef.size()); ++mask) {
        Rat wc = pc.chain_weight * bernoulli_weight(chain_probs, mask);
        Rat wp = pc.paper_weight * bernoulli_weight(paper_probs, mask);
        if (wc == 0 && wp == 0) continue;
        Bigraph g = pc.graph;
        for (size_t k = 0; k < undef.size(); ++k) g.put_edge(f, undef[k], edge_of((mask >> k) & 1));
        next.push_back(PartialCompletion{std::move(g), wc, wp, biases});
      }
    }
    current = std::move(next);
  }
  return current;
}

void add_rebased(ClassDist& chain, ClassDist& paper, const PartialCompletion& pc,
                 const ClassDist& d) {
  for (const auto& [cls, p] : d.weights()) {
    CoendClass rebased = canonicalize(Bigraph(), cls.world, cls.value,
                                      merged(pc.biases, cls.fresh_biases));
    chain.add(rebased, pc.chain_weight * p);
    paper.add(rebased, pc.paper_weight * p);
  }
}

ConfigDenotation den_config_impl(const Configuration& c, const DenOptions& options,
                                 bool parallel) {
  if (!c.term.is_plain()) {
    throw DenotationError("configuration denotation needs a term without memo contexts");
  }
  std::vector<PartialCompletion> completions = complete(c, options);
  std::vector<ClassDist> results(completions.size());
  std::vector<std::exception_ptr> errors(completions.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (size_t i = 0; i < completions.size(); ++i) {
    try {
      results[i] =
          den_comp(*c.term.focus, completions[i].graph, c.env, completions[i].biases, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  ConfigDenotation out;
  for (size_t i = 0; i < completions.size(); ++i) {
    add_rebased(out.chain, out.paper, completions[i], results[i]);
  }
  out.chain.check_mass();
  out.paper.check_mass();
  return out;
}

SoundnessReport soundness_impl(const Comp& p, const DenOptions& options, bool parallel) {
  SoundnessReport report;
  report.lhs = denote(p, options);
  ConfigDist terminals = parallel ? enumerate_bigstep(p) : enumerate_bigstep_serial(p);
  std::vector<std::pair<Configuration, Rat>> items(terminals.weights().begin(),
                                                   terminals.weights().end());
  report.terminals = items.size();
  std::vector<ConfigDenotation> dens(items.size());
  std::vector<std::exception_ptr> errors(items.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (size_t i = 0; i < items.size(); ++i) {
    try {
      dens[i] = den_config_impl(items[i].first, options, false);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (size_t i = 0; i < items.size(); ++i) {
    for (const auto& [cls, w] : dens[i].chain.weights()) report.rhs.add(cls, items[i].second * w);
    for (const auto& [cls, w] : dens[i].paper.weights()) {
      report.rhs_paper.add(cls, items[i].second * w);
    }
  }
  report.rhs.check_mass();
  report.rhs_paper.check_mass();
  report.equal = dist_eq(report.lhs, report.rhs);
  report.paper_equal = dist_eq(report.lhs, report.rhs_paper);
  return report;
}

}  // namespace

ConfigDenotation den_config_full(const Configuration& c, const DenOptions& options) {
  return den_config_impl(c, options, true);
}

ClassDist den_config(const Configuration& c, const DenOptions& options) {
  return den_config_impl(c, options, true).chain;
}

SoundnessReport check_soundness(const Comp& p, const DenOptions& options) {
  return soundness_impl(p, options, true);
}

SoundnessReport check_soundness_serial(const Comp& p, const DenOptions& options) {
  return soundness_impl(p, options, false);
}

DataflowReport check_dataflow(const CompPtr& t1, const CompPtr& t2, const CompPtr& u,
                              const Ident& x1, const Ident& x2, const LetPrefix& prefix,
                              const DenOptions& options) {
  auto den = [&](CompPtr body) { return denote(*wrap_prefix(prefix, std::move(body)), options); };
  DataflowReport r;
  r.commute = dist_eq(den(c_let(x1, t1, c_let(x2, t2, u))), den(c_let(x2, t2, c_let(x1, t1, u))));
  r.discard = dist_eq(den(c_let(x1, t1, t2)), den(t2));
  return r;
}

CompPtr wrap_prefix(const LetPrefix& prefix, CompPtr body) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) body = c_let(it->first, it->second, body);
  return body;
}

}  // namespace memlang
