#include "memlang/opsem.h"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <random>
#include <set>

#include "memlang/errors.h"

namespace memlang {

bool Closure::operator==(const Closure& other) const {
  return binder == other.binder && *body == *other.body && captured == other.captured;
}

namespace {

std::string frames_key(const ExtTerm& t) {
  std::string s = pretty(*t.focus);
  for (auto it = t.frames.rbegin(); it != t.frames.rend(); ++it) {
    if (it->kind == Frame::Kind::kLet) {
      s = "let val " + it->var + " <- " + s + " in " + pretty(*it->body);
    } else {
      s = "{{ " + s + " }}^{f" + std::to_string(it->fun.id) + ",a" +
          std::to_string(it->atom.id) + "}_" + env_to_string(it->restore);
    }
  }
  return s;
}

std::string closures_to_string(const std::map<FunLabel, Closure>& closures) {
  std::string s = "{";
  bool first = true;
  for (const auto& [f, cl] : closures) {
    if (!first) s += ", ";
    first = false;
    s += "f" + std::to_string(f.id) + " -> (memfn " + cl.binder + ". " + pretty(*cl.body) + ", " +
         env_to_string(cl.captured) + ")";
  }
  return s + "}";
}

bool is_let_terminal(const Comp& c) {
  return c.kind == Comp::Kind::kReturn || c.kind == Comp::Kind::kMemFn ||
         c.kind == Comp::Kind::kFresh;
}

}  // namespace

std::string Configuration::key() const {
  return env_to_string(env) + "\n" + frames_key(term) + "\n" + graph.to_string() + "\n" +
         closures_to_string(closures);
}

std::string pretty(const Configuration& c) {
  return "(" + env_to_string(c.env) + ", " + frames_key(c.term) + ", " + c.graph.to_string() +
         ", " + closures_to_string(c.closures) + ")";
}

Configuration initial_config(const Comp& p) {
  Configuration c;
  c.term = ExtTerm::plain(distinct_binders(p));
  return c;
}

Decomposition decompose(const ExtTerm& t) {
  ExtTerm n = t;
  n.normalize();
  Decomposition d;
  d.context = n.frames;
  CompPtr c = n.focus;
  while (c->kind == Comp::Kind::kLet && !is_let_terminal(*c->first)) {
    d.context.push_back(Frame::let(c->var, c->second));
    c = c->first;
  }
  d.redex = c;
  switch (c->kind) {
    case Comp::Kind::kLet:
      d.kind = Decomposition::Kind::kLetRedex;
      return d;
    case Comp::Kind::kReturn:
      if (d.context.empty()) {
        d.kind = Decomposition::Kind::kTerminal;
        return d;
      }
      if (d.context.back().kind != Frame::Kind::kMemo) {
        throw RuntimeError("stuck term: " + pretty(t));
      }
      d.kind = Decomposition::Kind::kMemoReturn;
      return d;
    case Comp::Kind::kMemFn:
    case Comp::Kind::kFresh:
      if (!d.context.empty()) throw RuntimeError("stuck term: " + pretty(t));
      d.kind = Decomposition::Kind::kTerminal;
      return d;
    default:
      d.kind = Decomposition::Kind::kRedex;
      return d;
  }
}

ExtTerm recompose(const std::vector<Frame>& context, CompPtr c) {
  ExtTerm t{context, std::move(c)};
  t.normalize();
  return t;
}

bool is_terminal(const Configuration& c) {
  return decompose(c.term).kind == Decomposition::Kind::kTerminal;
}

std::vector<Branch> step(const Configuration& c) {
  Decomposition d = decompose(c.term);
  const Comp& r = *d.redex;
  auto with_focus = [&](Configuration next, CompPtr focus) {
    next.term = recompose(d.context, std::move(focus));
    return next;
  };
  auto single = [](Configuration next) { return std::vector<Branch>{Branch{Rat(1), std::move(next)}}; };

  switch (d.kind) {
    case Decomposition::Kind::kTerminal:
      throw RuntimeError("no step from a terminal configuration");

    case Decomposition::Kind::kMemoReturn: {
      Frame memo = d.context.back();
      d.context.pop_back();
      EnvValue b = eval_value(c.env, *r.v);
      if (b.kind() != EnvValue::Kind::kBool) {
        throw RuntimeError("cannot memoize a non-boolean function");
      }
      if (c.graph.edge(memo.fun, memo.atom) != Edge::kUndef) {
        throw RuntimeError("memo edge (f" + std::to_string(memo.fun.id) + ", a" +
                           std::to_string(memo.atom.id) + ") is already defined");
      }
      Configuration next = c;
      next.graph.put_edge(memo.fun, memo.atom, edge_of(b.as_bool()));
      next.env = memo.restore;
      return single(with_focus(std::move(next), c_return(v_bool(b.as_bool()))));
    }

    case Decomposition::Kind::kLetRedex: {
      const Comp& bound = *r.first;
      Configuration next = c;
      EnvValue value;
      if (bound.kind == Comp::Kind::kReturn) {
        value = eval_value(c.env, *bound.v);
      } else if (bound.kind == Comp::Kind::kFresh) {
        value = EnvValue::atom(next.graph.add_atom_with(Edge::kUndef));
      } else {
        FunLabel f = next.graph.add_fun_with(Edge::kUndef);
        next.closures.emplace(f, Closure{bound.var, bound.first, c.env});
        value = EnvValue::fun(f);
      }
      next.env[r.var] = value;
      return single(with_focus(std::move(next), r.second));
    }

    case Decomposition::Kind::kRedex:
      break;
  }

  switch (r.kind) {
    case Comp::Kind::kIf: {
      EnvValue b = eval_value(c.env, *r.v);
      if (b.kind() != EnvValue::Kind::kBool) throw RuntimeError("if on a non-boolean");
      return single(with_focus(c, b.as_bool() ? r.first : r.second));
    }
    case Comp::Kind::kMatch: {
      EnvValue p = eval_value(c.env, *r.v);
      if (p.kind() != EnvValue::Kind::kPair) throw RuntimeError("match on a non-pair");
      Configuration next = c;
      next.env[r.var] = p.fst();
      next.env[r.var2] = p.snd();
      return single(with_focus(std::move(next), r.first));
    }
    case Comp::Kind::kFlip: {
      std::vector<Branch> out;
      if (r.theta > 0) out.push_back(Branch{r.theta, with_focus(c, c_return(v_true()))});
      if (r.theta < 1) out.push_back(Branch{1 - r.theta, with_focus(c, c_return(v_false()))});
      return out;
    }
    case Comp::Kind::kEq: {
      EnvValue a = eval_value(c.env, *r.v);
      EnvValue b = eval_value(c.env, *r.w);
      return single(with_focus(c, c_return(v_bool(a == b))));
    }
    case Comp::Kind::kApp: {
      EnvValue fv = eval_value(c.env, *r.v);
      EnvValue av = eval_value(c.env, *r.w);
      if (fv.kind() != EnvValue::Kind::kFun || av.kind() != EnvValue::Kind::kAtom) {
        throw RuntimeError("ill-typed application " + pretty(r));
      }
      FunLabel f = fv.as_fun();
      AtomLabel a = av.as_atom();
      Edge e = c.graph.edge(f, a);
      if (e != Edge::kUndef) return single(with_focus(c, c_return(v_bool(e == Edge::kTrue))));
      auto it = c.closures.find(f);
      if (it == c.closures.end()) {
        throw RuntimeError("no closure for f" + std::to_string(f.id));
      }
      const Closure& cl = it->second;
      Configuration next = c;
      d.context.push_back(Frame::memo(f, a, c.env));
      next.env = cl.captured;
      next.env[cl.binder] = av;
      return single(with_focus(std::move(next), cl.body));
    }
    default:
      throw RuntimeError("stuck term: " + pretty(c.term));
  }
}

SampleRun run_sampled(const Comp& p, const SampleOptions& options) {
  std::mt19937_64 rng(options.seed);
  const Rat scale(mpz_class(1) << 53);
  size_t forced = 0;
  SampleRun run;
  Configuration c = initial_config(p);
  run.trace.push_back(c);
  for (size_t steps = 0; !is_terminal(c); ++steps) {
    if (steps >= options.step_budget) throw RuntimeError("step budget exhausted");
    Decomposition d = decompose(c.term);
    std::vector<Branch> branches = step(c);
    size_t pick = 0;
    if (d.kind == Decomposition::Kind::kRedex && d.redex->kind == Comp::Kind::kFlip) {
      bool outcome;
      if (forced < options.forced_flips.size()) {
        outcome = options.forced_flips[forced++];
      } else {
        Rat draw(mpz_class(static_cast<unsigned long>(rng() >> 11)));
        outcome = draw / scale < d.redex->theta;
      }
      // Branches are listed true first; a degenerate flip has only one.
      const Rat& theta = d.redex->theta;
      if (theta == 0 || theta == 1) {
        if (outcome != (theta == 1)) throw RuntimeError("forced an impossible flip outcome");
        pick = 0;
      } else {
        pick = outcome ? 0 : 1;
      }
    }
    c = std::move(branches[pick].config);
    run.trace.push_back(c);
  }
  run.terminal = c;
  return run;
}

namespace {

struct Pending {
  Rat weight;
  Configuration config;
  size_t depth;
};

using Accumulator = std::map<std::string, std::pair<Configuration, Rat>>;

void accumulate(Accumulator& acc, const Configuration& c, const Rat& w) {
  std::string k = c.key();
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(std::move(k), std::make_pair(c, w));
  } else {
    it->second.second += w;
  }
}

void unfold(Pending start, Accumulator& acc, const EnumerateOptions& options) {
  std::vector<Pending> stack;
  stack.push_back(std::move(start));
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (options.on_config) options.on_config(cur.config);
    if (is_terminal(cur.config)) {
      accumulate(acc, cur.config, cur.weight);
      continue;
    }
    if (cur.depth >= options.step_budget) throw RuntimeError("step budget exhausted");
    std::vector<Branch> branches = step(cur.config);
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
      stack.push_back(Pending{cur.weight * it->prob, std::move(it->config), cur.depth + 1});
    }
  }
}

ConfigDist to_dist(const Accumulator& acc) {
  ConfigDist d;
  for (const auto& [k, entry] : acc) d.add(entry.first, entry.second);
  d.check_mass();
  return d;
}

}  // namespace

ConfigDist enumerate_bigstep_serial(const Comp& p, const EnumerateOptions& options) {
  Accumulator acc;
  unfold(Pending{Rat(1), initial_config(p), 0}, acc, options);
  return to_dist(acc);
}

ConfigDist enumerate_bigstep(const Comp& p, const EnumerateOptions& options) {
  if (options.on_config) return enumerate_bigstep_serial(p, options);
  const size_t target = 4 * static_cast<size_t>(std::max(1, omp_get_max_threads()));
  std::vector<Pending> frontier{Pending{Rat(1), initial_config(p), 0}};
  Accumulator acc;
  while (!frontier.empty() && frontier.size() < target) {
    std::vector<Pending> next;
    for (Pending& cur : frontier) {
      if (is_terminal(cur.config)) {
        accumulate(acc, cur.config, cur.weight);
        continue;
      }
      if (cur.depth >= options.step_budget) throw RuntimeError("step budget exhausted");
      for (Branch& b : step(cur.config)) {
        next.push_back(Pending{cur.weight * b.prob, std::move(b.config), cur.depth + 1});
      }
    }
    frontier = std::move(next);
  }

  std::vector<Accumulator> parts(frontier.size());
  std::vector<std::exception_ptr> errors(frontier.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < frontier.size(); ++i) {
    try {
      unfold(frontier[i], parts[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const Accumulator& part : parts) {
    for (const auto& [k, entry] : part) accumulate(acc, entry.first, entry.second);
  }
  return to_dist(acc);
}

Judgement config_judgement(const Configuration& c) {
  for (const auto& [f, cl] : c.closures) {
    if (!c.graph.has_fun(f)) throw RuntimeError("closure for unknown f" + std::to_string(f.id));
  }
  if (c.closures.size() != c.graph.left().size()) {
    throw RuntimeError("closure map does not cover the function nodes");
  }
  auto check_labels = [&](const EnvValue& v) {
    v.visit_leaves([&](const EnvValue& leaf) {
      if ((leaf.kind() == EnvValue::Kind::kFun && !c.graph.has_fun(leaf.as_fun())) ||
          (leaf.kind() == EnvValue::Kind::kAtom && !c.graph.has_atom(leaf.as_atom()))) {
        throw RuntimeError("label " + leaf.to_string() + " is not in the graph");
      }
    });
  };
  for (const auto& [name, v] : c.env) check_labels(v);
  for (const Frame& f : c.term.frames) {
    if (f.kind != Frame::Kind::kMemo) continue;
    if (!c.graph.has_fun(f.fun) || !c.graph.has_atom(f.atom)) {
      throw RuntimeError("memo context names a label outside the graph");
    }
    for (const auto& [name, v] : f.restore) check_labels(v);
  }
  Judgement j{ctx_of_env(c.env), c.term.memo_pairs(), Ty::boolean()};
  try {
    j.type = type_of_ext(j.ctx, j.stack, c.term);
  } catch (const TypeError& e) {
    throw RuntimeError(std::string("judgement failure: ") + e.what());
  }
  return j;
}

bool check_stack_invariants(const Configuration& c) {
  MemoStack stack = c.term.memo_pairs();
  std::set<std::pair<FunLabel, AtomLabel>> seen(stack.begin(), stack.end());
  if (seen.size() != stack.size()) return false;
  Decomposition d;
  try {
    d = decompose(c.term);
  } catch (const RuntimeError&) {
    return false;
  }
  if (d.kind != Decomposition::Kind::kRedex || d.redex->kind != Comp::Kind::kApp) return true;
  EnvValue fv = eval_value(c.env, *d.redex->v);
  EnvValue av = eval_value(c.env, *d.redex->w);
  if (c.graph.edge(fv.as_fun(), av.as_atom()) != Edge::kUndef) return true;
  return std::none_of(stack.begin(), stack.end(),
                      [&](const auto& p) { return p.first == fv.as_fun(); });
}

std::pair<EnvValue, Configuration> terminal_value(const Configuration& c) {
  Decomposition d = decompose(c.term);
  if (d.kind != Decomposition::Kind::kTerminal) {
    throw RuntimeError("configuration is not terminal");
  }
  Configuration out = c;
  const Comp& r = *d.redex;
  if (r.kind == Comp::Kind::kReturn) return {eval_value(c.env, *r.v), std::move(out)};
  if (r.kind == Comp::Kind::kFresh) {
    AtomLabel a = out.graph.add_atom_with(Edge::kUndef);
    out.term = ExtTerm::plain(c_return(v_var("%fresh")));
    out.env["%fresh"] = EnvValue::atom(a);
    return {EnvValue::atom(a), std::move(out)};
  }
  FunLabel f = out.graph.add_fun_with(Edge::kUndef);
  out.closures.emplace(f, Closure{r.var, r.first, c.env});
  out.term = ExtTerm::plain(c_return(v_var("%memfn")));
  out.env["%memfn"] = EnvValue::fun(f);
  return {EnvValue::fun(f), std::move(out)};
}

std::string Observation::key() const {
  std::string s = value.to_string() + "|" + graph.to_string() + "|";
  for (const auto& [f, cl] : closures) {
    s += "f" + std::to_string(f.id) + ":" + cl.body + " " + env_to_string(cl.env) + ";";
  }
  return s;
}

Observation observe(const Configuration& c) {
  auto [value, cfg] = terminal_value(c);
  std::vector<FunLabel> funs;
  std::vector<AtomLabel> atoms;
  auto visit = [&](const EnvValue& v) {
    v.visit_leaves([&](const EnvValue& leaf) {
      if (leaf.kind() == EnvValue::Kind::kFun &&
          std::find(funs.begin(), funs.end(), leaf.as_fun()) == funs.end()) {
        funs.push_back(leaf.as_fun());
      } else if (leaf.kind() == EnvValue::Kind::kAtom &&
                 std::find(atoms.begin(), atoms.end(), leaf.as_atom()) == atoms.end()) {
        atoms.push_back(leaf.as_atom());
      }
    });
  };
  visit(value);
  std::vector<std::pair<std::string, Env>> raw;
  for (size_t i = 0; i < funs.size(); ++i) {
    const Closure& cl = cfg.closures.at(funs[i]);
    CompPtr fn = c_memfn(cl.binder, cl.body);
    Env env = restrict_env(cl.captured, free_vars(*fn));
    for (const auto& [name, v] : env) visit(v);
    raw.emplace_back(pretty(*alpha_canonical(*fn)), std::move(env));
  }

  std::map<FunLabel, FunLabel> fmap;
  std::map<AtomLabel, AtomLabel> amap;
  for (size_t i = 0; i < funs.size(); ++i) fmap[funs[i]] = FunLabel{static_cast<uint32_t>(i)};
  for (size_t j = 0; j < atoms.size(); ++j) amap[atoms[j]] = AtomLabel{static_cast<uint32_t>(j)};
  auto fm = [&](FunLabel f) { return fmap.at(f); };
  auto am = [&](AtomLabel a) { return amap.at(a); };

  Observation obs;
  obs.value = value.map_labels(fm, am);
  obs.graph = cfg.graph.restrict(funs, atoms).canonical_relabel(Bigraph(), funs, atoms);
  for (size_t i = 0; i < funs.size(); ++i) {
    Env env;
    for (const auto& [name, v] : raw[i].second) env.emplace(name, v.map_labels(fm, am));
    obs.closures.emplace(fmap.at(funs[i]), Observation::ObservedClosure{raw[i].first, env});
  }
  return obs;
}

ObservationDist observational_bigstep(const Comp& p) {
  return map_dist<Observation, ObservationLess>(enumerate_bigstep(p),
                                                [](const Configuration& c) { return observe(c); });
}

}  // namespace memlang
