#include "memlang/laws.h"

#include <exception>
#include <functional>

#include "memlang/errors.h"
#include "memlang/json.h"
#include "memlang/opsem.h"

namespace memlang {

namespace {

ValPtr tuple(const std::vector<Ident>& names) {
  ValPtr v = v_var(names.back());
  for (size_t i = names.size() - 1; i-- > 0;) v = v_pair(v_var(names[i]), v);
  return v;
}

// Runs check(i) for every index in parallel and gathers failures in order.
LawReport run_indexed(size_t count, size_t checks_per_case,
                      const std::function<std::vector<LawFailure>(size_t)>& check) {
  std::vector<std::vector<LawFailure>> found(count);
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < count; ++i) {
    try {
      found[i] = check(i);
    } catch (const std::exception& e) {
      found[i].push_back(LawFailure{i, "exception", e.what()});
    }
  }
  LawReport report;
  report.cases = count;
  report.checks = count * checks_per_case;
  for (auto& f : found) report.failures.insert(report.failures.end(), f.begin(), f.end());
  return report;
}

Env env_of_world(const Bigraph& g) {
  Env env;
  for (FunLabel f : g.left()) env["e_f" + std::to_string(f.id)] = EnvValue::fun(f);
  for (AtomLabel a : g.right()) env["e_a" + std::to_string(a.id)] = EnvValue::atom(a);
  env["e_b"] = EnvValue::boolean(true);
  return env;
}

Env extended(Env env, const Ident& x, const EnvValue& v) {
  env[x] = v;
  return env;
}

}  // namespace

std::string to_text(const ClassDist& d) { return to_json(d).dump(); }
std::string to_text(const ObservationDist& d) { return to_json(d).dump(); }

MemPrograms mem_programs(const MemCase& c) {
  const bool fresh_arg = c.arg.empty();
  const Ident n = fresh_arg ? "arg_n" : c.arg;
  auto wrap = [&](CompPtr body) {
    if (fresh_arg) body = c_let(n, c_fresh(), body);
    return wrap_prefix(c.prefix, body);
  };
  CompPtr fn = c_memfn(c.binder, c.body);
  CompPtr subst = substitute(*c.body, c.binder, *v_var(n));
  ValPtr f = v_var("memo_f");

  MemPrograms out;
  out.one_sample = wrap(c_let("memo_f", fn, c_app(f, v_var(n))));
  out.substituted = wrap(subst);
  out.two_samples =
      wrap(c_let("memo_f", fn,
                 c_let("res_1", c_app(f, v_var(n)),
                       c_let("res_2", c_app(f, v_var(n)), c_return(tuple({"res_1", "res_2"}))))));
  out.diagonal = wrap(c_let("res_v", subst, c_return(tuple({"res_v", "res_v"}))));

  std::vector<Ident> sites = c.atoms;
  sites.push_back(n);
  if (!c.atoms.empty()) sites.push_back(c.atoms.front());
  sites.push_back(n);
  std::vector<Ident> results;
  for (size_t i = 0; i < sites.size(); ++i) results.push_back("res_" + std::to_string(i));

  CompPtr lhs = c_return(tuple(results));
  CompPtr rhs = c_return(tuple(results));
  for (size_t i = sites.size(); i-- > 0;) {
    ValPtr w = v_var(sites[i]);
    lhs = c_let(results[i], c_app(f, w), lhs);
    Ident hit = "hit_" + std::to_string(i);
    CompPtr unfolded = c_let(hit, c_eq(w, v_var(n)),
                             c_if(v_var(hit), c_return(v_var("memo_y0")), c_app(f, w)));
    rhs = c_let(results[i], unfolded, rhs);
  }
  out.unfolded_lhs = wrap(c_let("memo_f", fn, lhs));
  out.unfolded_rhs = wrap(c_let("memo_y0", subst, c_let("memo_f", fn, rhs)));
  return out;
}

LawReport run_mem_laws(size_t count, uint64_t seed, const GenOptions& options) {
  Generator gen(seed, options);
  std::vector<MemCase> cases;
  for (size_t i = 0; i < count; ++i) cases.push_back(gen.mem_case());
  return run_indexed(count, 6, [&](size_t i) {
    std::vector<LawFailure> failures;
    MemPrograms p = mem_programs(cases[i]);
    auto compare = [&](const std::string& law, const CompPtr& a, const CompPtr& b) {
      ObservationDist oa = observational_bigstep(*a);
      ObservationDist ob = observational_bigstep(*b);
      if (!dist_eq(oa, ob)) {
        failures.push_back({i, law + " (operational)",
                            pretty(*a) + "\n  " + to_text(oa) + "\nvs\n" + pretty(*b) + "\n  " +
                                to_text(ob)});
      }
      ClassDist da = denote(*a);
      ClassDist db = denote(*b);
      if (!dist_eq(da, db)) {
        failures.push_back({i, law + " (denotational)",
                            pretty(*a) + "\n  " + to_text(da) + "\nvs\n" + pretty(*b) + "\n  " +
                                to_text(db)});
      }
    };
    compare("one sample", p.one_sample, p.substituted);
    compare("two samples", p.two_samples, p.diagonal);
    compare("unfolding", p.unfolded_lhs, p.unfolded_rhs);
    return failures;
  });
}

LawReport run_dataflow_laws(size_t count, uint64_t seed, const GenOptions& options) {
  Generator gen(seed, options);
  std::vector<DataflowCase> cases;
  for (size_t i = 0; i < count; ++i) cases.push_back(gen.dataflow_case());
  return run_indexed(count, 2, [&](size_t i) {
    const DataflowCase& c = cases[i];
    DataflowReport r = check_dataflow(c.t1, c.t2, c.u, c.x1, c.x2, c.prefix);
    std::vector<LawFailure> failures;
    std::string shown = pretty(*wrap_prefix(c.prefix, c_let(c.x1, c.t1, c_let(c.x2, c.t2, c.u))));
    if (!r.commute) failures.push_back({i, "commutativity", shown});
    if (!r.discard) failures.push_back({i, "discardability", shown});
    return failures;
  });
}

Bigraph random_world(std::mt19937_64& rng, size_t max_funs, size_t max_atoms) {
  std::uniform_int_distribution<size_t> nf(0, max_funs);
  std::uniform_int_distribution<size_t> na(0, max_atoms);
  std::bernoulli_distribution bit(0.5);
  Bigraph g;
  size_t atoms = na(rng);
  size_t funs = nf(rng);
  for (size_t i = 0; i < atoms; ++i) g.add_atom({});
  for (size_t i = 0; i < funs; ++i) {
    std::vector<Edge> row;
    for (size_t j = 0; j < atoms; ++j) row.push_back(edge_of(bit(rng)));
    g.add_fun(row);
  }
  return g;
}

Biases random_biases(std::mt19937_64& rng, const Bigraph& g) {
  std::uniform_int_distribution<int> den(1, 7);
  Biases lambda;
  for (FunLabel f : g.left()) {
    int q = den(rng);
    int p = std::uniform_int_distribution<int>(0, q)(rng);
    lambda[f] = Rat(p, q);
    lambda[f].canonicalize();
  }
  return lambda;
}

LawReport run_monad_laws(size_t count, uint64_t seed) {
  struct MonadCase {
    Bigraph g;
    Env env;
    CompPtr t;    // m : T(A)
    CompPtr u;    // k : A -> T(B), binds kx
    CompPtr w;    // l : B -> T(C), binds ky
    Ident v;      // variable whose value feeds the left unit law
    CompPtr u_v;  // continuation for the left unit law, binds kx
    std::vector<Biases> states;
  };
  std::mt19937_64 rng(seed);
  Generator gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<MonadCase> cases;
  for (size_t i = 0; i < count; ++i) {
    MonadCase c;
    c.g = random_world(rng, 2, 2);
    c.env = env_of_world(c.g);
    TyCtx ctx = ctx_of_env(c.env);
    Ty a = gen.type(1);
    Ty b = gen.type(1);
    c.t = gen.term(ctx, a, 3);
    c.u = gen.term(ctx.extended("kx", a), b, 3);
    c.w = gen.term(ctx.extended("ky", b), gen.type(1), 3);
    auto it = c.env.begin();
    std::advance(it, std::uniform_int_distribution<size_t>(0, c.env.size() - 1)(rng));
    c.v = it->first;
    c.u_v = gen.term(ctx.extended("kx", type_of_env_value(it->second)), gen.type(1), 3);
    for (int s = 0; s < 5; ++s) c.states.push_back(random_biases(rng, c.g));
    cases.push_back(std::move(c));
  }
  return run_indexed(count, 15, [&](size_t i) {
    const MonadCase& c = cases[i];
    std::vector<LawFailure> failures;
    MonValue m = den_comp_value(c.t, c.g, c.env);
    auto k_of = [&](CompPtr body) -> Kleisli {
      Env env = c.env;
      return [body, env](const Bigraph& h, const EnvValue& x) {
        return den_comp_value(body, h, extended(env, "kx", x));
      };
    };
    Kleisli k = k_of(c.u);
    Kleisli l = [body = c.w, env = c.env](const Bigraph& h, const EnvValue& y) {
      return den_comp_value(body, h, extended(env, "ky", y));
    };
    Kleisli ret = [](const Bigraph& h, const EnvValue& x) { return unit(h, x); };
    Kleisli kv = k_of(c.u_v);
    const EnvValue& v = c.env.at(c.v);

    MonValue left = memlang::bind(unit(c.g, v), kv);
    MonValue left_expected = kv(c.g, v);
    MonValue right = memlang::bind(m, ret);
    MonValue assoc_lhs = memlang::bind(memlang::bind(m, k), l);
    MonValue assoc_rhs = memlang::bind(m, [k, l](const Bigraph& h, const EnvValue& x) {
      return memlang::bind(k(h, x), l);
    });
    std::string shown = pretty(*c.t) + " ; " + pretty(*c.u) + " ; " + pretty(*c.w) + " at " +
                        c.g.to_string();
    for (const Biases& lambda : c.states) {
      if (!dist_eq(left(lambda), left_expected(lambda))) {
        failures.push_back({i, "left unit", pretty(*c.u_v) + " at " + c.g.to_string()});
      }
      if (!dist_eq(right(lambda), m(lambda))) failures.push_back({i, "right unit", shown});
      if (!dist_eq(assoc_lhs(lambda), assoc_rhs(lambda))) {
        failures.push_back({i, "associativity", shown});
      }
    }
    return failures;
  });
}

LawReport run_naturality(size_t count, uint64_t seed) {
  struct NatCase {
    Bigraph g;
    Bigraph target;
    Env env;
    CompPtr t;
    std::vector<Biases> states;
  };
  std::mt19937_64 rng(seed);
  Generator gen(seed ^ 0x51ed2701ULL);
  std::bernoulli_distribution bit(0.5);
  std::vector<NatCase> cases;
  for (size_t i = 0; i < count; ++i) {
    NatCase c;
    c.g = random_world(rng, 2, 2);
    c.env = env_of_world(c.g);
    c.t = gen.term(ctx_of_env(c.env), gen.type(1), 4);
    c.target = c.g;
    if (bit(rng)) {
      std::vector<Edge> column;
      for (size_t j = 0; j < c.g.left().size(); ++j) column.push_back(edge_of(bit(rng)));
      c.target.add_atom(column);
    } else {
      std::vector<Edge> row;
      for (size_t j = 0; j < c.g.right().size(); ++j) row.push_back(edge_of(bit(rng)));
      c.target.add_fun(row);
    }
    for (int s = 0; s < 3; ++s) c.states.push_back(random_biases(rng, c.target));
    cases.push_back(std::move(c));
  }
  return run_indexed(count, 3, [&](size_t i) {
    const NatCase& c = cases[i];
    std::vector<LawFailure> failures;
    MonValue moved = transport(den_comp_value(c.t, c.g, c.env), Embedding::inclusion(c.g, c.target));
    MonValue direct = den_comp_value(c.t, c.target, c.env);
    for (const Biases& lambda : c.states) {
      ClassDist a = moved(lambda);
      ClassDist b = direct(lambda);
      if (!dist_eq(a, b)) {
        failures.push_back({i, "naturality",
                            pretty(*c.t) + " from " + c.g.to_string() + " to " +
                                c.target.to_string() + "\n  " + to_text(a) + "\nvs\n  " +
                                to_text(b)});
      }
    }
    return failures;
  });
}

}  // namespace memlang
