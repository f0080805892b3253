#include "memlang/generator.h"

#include <algorithm>

namespace memlang {

namespace {

bool mentions(const Ty& t, Ty::Kind k) {
  if (t.kind() == k) return true;
  if (t.kind() == Ty::Kind::kProd) return mentions(t.fst(), k) || mentions(t.snd(), k);
  return false;
}

}  // namespace

Generator::Generator(uint64_t seed, GenOptions options) : rng_(seed), options_(options) {}

Ident Generator::fresh_name(const std::string& stem) {
  return stem + std::to_string(counter_++);
}

int Generator::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool Generator::chance(int percent) { return uniform(0, 99) < percent; }

Rat Generator::random_theta() {
  static const Rat kThetas[] = {Rat(0), Rat(1, 4), Rat(1, 3), Rat(1, 2),
                                Rat(2, 3), Rat(3, 5), Rat(1)};
  return kThetas[uniform(0, 6)];
}

Ty Generator::random_type(int depth) {
  int r = uniform(0, depth > 0 ? 9 : 7);
  if (r < 4) return Ty::boolean();
  if (r < 6) return Ty::atom();
  if (r < 8) return Ty::fun();
  return Ty::prod(random_type(depth - 1), random_type(depth - 1));
}

Generator::Scope Generator::bind(const Scope& s, const Ident& x, const Ty& t) const {
  Scope out = s;
  out.ctx = s.ctx.extended(x, t);
  if (s.in_memfn) out.locals.insert(x);
  return out;
}

std::vector<Ident> Generator::vars_of(const Scope& s, const Ty& t) const {
  std::vector<Ident> out;
  std::set<Ident> seen;
  const auto& decls = s.ctx.decls();
  for (auto it = decls.rbegin(); it != decls.rend(); ++it) {
    if (!seen.insert(it->first).second) continue;
    if (it->second == t) out.push_back(it->first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Generator::producible(const Scope& s, const Ty& t) const {
  if (mentions(t, Ty::Kind::kAtom) && vars_of(s, Ty::atom()).empty() && budget_.freshes <= 0)
    return false;
  if (mentions(t, Ty::Kind::kFun) && vars_of(s, Ty::fun()).empty() && budget_.memfns <= 0)
    return false;
  return true;
}

ValPtr Generator::value_of(const Scope& s, const Ty& t) {
  auto vars = vars_of(s, t);
  bool use_var = !vars.empty() && (t.kind() != Ty::Kind::kBool || chance(75));
  if (t.kind() == Ty::Kind::kProd && !vars.empty()) use_var = chance(50);
  if (use_var) return v_var(vars[uniform(0, static_cast<int>(vars.size()) - 1)]);
  switch (t.kind()) {
    case Ty::Kind::kBool:
      return v_bool(chance(50));
    case Ty::Kind::kProd:
      return v_pair(value_of(s, t.fst()), value_of(s, t.snd()));
    default:
      throw Error("generator: no value of type " + t.to_string());
  }
}

CompPtr Generator::gen_memfn(const Scope& s, int depth) {
  --budget_.memfns;
  Ident x = fresh_name("x");
  Scope inner = s;
  inner.in_memfn = true;
  inner = bind(inner, x, Ty::atom());
  return c_memfn(x, gen(inner, Ty::boolean(), std::min(depth - 1, 3)));
}

CompPtr Generator::gen_leaf(const Scope& s, const Ty& t, int depth) {
  switch (t.kind()) {
    case Ty::Kind::kBool: {
      auto atoms = vars_of(s, Ty::atom());
      std::vector<Ident> args;
      for (const auto& a : atoms)
        if (!s.locals.count(a)) args.push_back(a);
      auto funs = vars_of(s, Ty::fun());
      std::vector<int> options = {0};
      if (budget_.flips > 0) options.insert(options.end(), {1, 1, 1});
      if (!atoms.empty()) options.push_back(2);
      if (!funs.empty() && !args.empty()) options.insert(options.end(), {3, 3, 3, 3});
      switch (options[uniform(0, static_cast<int>(options.size()) - 1)]) {
        case 1:
          --budget_.flips;
          return c_flip(random_theta());
        case 2: {
          auto pick = [&] { return atoms[uniform(0, static_cast<int>(atoms.size()) - 1)]; };
          return c_eq(v_var(pick()), v_var(pick()));
        }
        case 3:
          return c_app(v_var(funs[uniform(0, static_cast<int>(funs.size()) - 1)]),
                       v_var(args[uniform(0, static_cast<int>(args.size()) - 1)]));
        default:
          return c_return(value_of(s, t));
      }
    }
    case Ty::Kind::kAtom:
      if (budget_.freshes > 0 && chance(40)) {
        --budget_.freshes;
        return c_fresh();
      }
      return c_return(value_of(s, t));
    case Ty::Kind::kFun:
      if (budget_.memfns > 0 && chance(40)) return gen_memfn(s, depth);
      return c_return(value_of(s, t));
    case Ty::Kind::kProd:
      return c_return(value_of(s, t));
  }
  return c_return(value_of(s, t));
}

CompPtr Generator::gen(const Scope& s, const Ty& t, int depth) {
  // Bind a witness first for every base type the scope cannot yet name.
  if (mentions(t, Ty::Kind::kAtom) && vars_of(s, Ty::atom()).empty()) {
    --budget_.freshes;
    Ident a = fresh_name("a");
    return c_let(a, c_fresh(), gen(bind(s, a, Ty::atom()), t, depth - 1));
  }
  if (mentions(t, Ty::Kind::kFun) && vars_of(s, Ty::fun()).empty()) {
    Ident f = fresh_name("f");
    CompPtr fn = gen_memfn(s, depth);
    return c_let(f, fn, gen(bind(s, f, Ty::fun()), t, depth - 1));
  }
  if (depth <= 1) return gen_leaf(s, t, depth);

  int r = uniform(0, 99);
  if (r < 45) {
    Ty a = random_type(1);
    for (int tries = 0; tries < 8 && !producible(s, a); ++tries) a = random_type(1);
    if (!producible(s, a)) a = Ty::boolean();
    Ident x = fresh_name(a.kind() == Ty::Kind::kAtom  ? "a"
                         : a.kind() == Ty::Kind::kFun ? "f"
                         : a.kind() == Ty::Kind::kBool ? "b"
                                                       : "p");
    CompPtr bound = gen(s, a, depth / 2);
    return c_let(x, bound, gen(bind(s, x, a), t, depth - 1));
  }
  if (r < 60) {
    ValPtr cond = value_of(s, Ty::boolean());
    CompPtr then_branch = gen(s, t, depth - 1);
    return c_if(cond, then_branch, gen(s, t, depth - 1));
  }
  if (r < 68) {
    std::vector<std::pair<Ident, Ty>> pairs;
    std::set<Ident> seen;
    const auto& decls = s.ctx.decls();
    for (auto it = decls.rbegin(); it != decls.rend(); ++it)
      if (seen.insert(it->first).second && it->second.kind() == Ty::Kind::kProd)
        pairs.push_back(*it);
    if (!pairs.empty()) {
      const auto& [p, pt] = pairs[uniform(0, static_cast<int>(pairs.size()) - 1)];
      Ident y1 = fresh_name("m");
      Ident y2 = fresh_name("m");
      Scope inner = bind(bind(s, y1, pt.fst()), y2, pt.snd());
      return c_match(v_var(p), y1, y2, gen(inner, t, depth - 1));
    }
  }
  return gen_leaf(s, t, depth);
}

int comp_depth(const Comp& c) {
  int below = 0;
  if (c.first) below = std::max(below, comp_depth(*c.first));
  if (c.second) below = std::max(below, comp_depth(*c.second));
  return below + 1;
}

CompPtr Generator::program() {
  for (;;) {
    CompPtr p = program_attempt();
    if (comp_depth(*p) <= options_.max_depth) return p;
  }
}

CompPtr Generator::program_attempt() {
  budget_ = {options_.max_flips, options_.max_freshes, options_.max_memfns};
  counter_ = 0;
  // A spine of lets that allocates atoms and functions and calls them,
  // followed by a random tail over the bound variables.
  Scope s;
  std::vector<std::pair<Ident, CompPtr>> spine;
  int lets = uniform(1, std::max(1, options_.max_depth - 2));
  for (int i = 0; i < lets; ++i) {
    auto funs = vars_of(s, Ty::fun());
    auto atoms = vars_of(s, Ty::atom());
    std::vector<int> kinds;
    if (budget_.freshes > 0) kinds.insert(kinds.end(), {0, 0});
    if (budget_.memfns > 0) kinds.insert(kinds.end(), {1, 1});
    if (!funs.empty() && !atoms.empty()) kinds.insert(kinds.end(), {2, 2, 2});
    kinds.push_back(3);
    Ident x;
    CompPtr bound;
    Ty t = Ty::boolean();
    switch (kinds[uniform(0, static_cast<int>(kinds.size()) - 1)]) {
      case 0:
        --budget_.freshes;
        t = Ty::atom();
        x = fresh_name("a");
        bound = c_fresh();
        break;
      case 1:
        t = Ty::fun();
        x = fresh_name("f");
        bound = gen_memfn(s, 4);
        break;
      case 2:
        x = fresh_name("b");
        bound = c_app(v_var(funs[uniform(0, static_cast<int>(funs.size()) - 1)]),
                      v_var(atoms[uniform(0, static_cast<int>(atoms.size()) - 1)]));
        break;
      default:
        t = random_type(1);
        if (!producible(s, t)) t = Ty::boolean();
        x = fresh_name(t.kind() == Ty::Kind::kBool ? "b" : "p");
        bound = gen(s, t, 3);
        break;
    }
    spine.emplace_back(x, bound);
    s = bind(s, x, t);
  }
  Ty t = random_type(1);
  if (!producible(s, t)) t = Ty::boolean();
  CompPtr out = gen(s, t, std::max(1, options_.max_depth - lets));
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) out = c_let(it->first, it->second, out);
  return out;
}

CompPtr Generator::term(const TyCtx& ctx, const Ty& t, int depth) {
  budget_ = {options_.max_flips, options_.max_freshes, options_.max_memfns};
  Scope s;
  s.ctx = ctx;
  return gen(s, t, depth);
}

LetPrefix Generator::gen_prefix(Scope& s, int lets) {
  LetPrefix prefix;
  for (int i = 0; i < lets; ++i) {
    Ty a = random_type(0);
    if (!producible(s, a)) a = Ty::boolean();
    Ident x = fresh_name(a.kind() == Ty::Kind::kAtom  ? "a"
                         : a.kind() == Ty::Kind::kFun ? "g"
                                                      : "b");
    CompPtr bound = gen(s, a, 2);
    prefix.emplace_back(x, bound);
    s = bind(s, x, a);
  }
  return prefix;
}

MemCase Generator::mem_case() {
  budget_ = {options_.max_flips, options_.max_freshes, options_.max_memfns};
  counter_ = 0;
  Scope s;
  MemCase out;
  out.prefix = gen_prefix(s, uniform(0, 3));
  out.atoms = vars_of(s, Ty::atom());
  out.binder = fresh_name("x");
  Scope inner = s;
  inner.in_memfn = true;
  inner = bind(inner, out.binder, Ty::atom());
  budget_.flips = std::max(budget_.flips, 2);
  out.body = gen(inner, Ty::boolean(), uniform(1, 4));
  if (!out.atoms.empty() && chance(40))
    out.arg = out.atoms[uniform(0, static_cast<int>(out.atoms.size()) - 1)];
  return out;
}

DataflowCase Generator::dataflow_case() {
  budget_ = {options_.max_flips, options_.max_freshes, options_.max_memfns};
  counter_ = 0;
  Scope s;
  DataflowCase out;
  out.prefix = gen_prefix(s, uniform(0, 2));
  Ty a1 = random_type(1);
  if (!producible(s, a1)) a1 = Ty::boolean();
  out.t1 = gen(s, a1, uniform(1, 3));
  Ty a2 = random_type(1);
  if (!producible(s, a2)) a2 = Ty::boolean();
  out.t2 = gen(s, a2, uniform(1, 3));
  out.x1 = fresh_name("y");
  out.x2 = fresh_name("y");
  Scope inner = bind(bind(s, out.x1, a1), out.x2, a2);
  Ty tu = random_type(1);
  if (!producible(inner, tu)) tu = Ty::boolean();
  out.u = gen(inner, tu, uniform(1, 3));
  return out;
}

}  // namespace memlang
