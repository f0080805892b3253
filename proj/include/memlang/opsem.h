// Small-step operational semantics over configurations
// (env, extended expression, partial bigraph, closures), with a seeded
// sampler, exhaustive exact enumeration, invariant checks and
// observations for comparing programs.

#ifndef MEMLANG_OPSEM_H_
#define MEMLANG_OPSEM_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memlang/bigraph.h"
#include "memlang/dist.h"
#include "memlang/ext_term.h"
#include "memlang/syntax.h"
#include "memlang/typecheck.h"
#include "memlang/value.h"

namespace memlang {

struct Closure {
  Ident binder;
  CompPtr body;
  Env captured;

  bool operator==(const Closure& other) const;
};

struct Configuration {
  Env env;
  ExtTerm term;
  Bigraph graph;
  std::map<FunLabel, Closure> closures;

  // Total order used to merge equal configurations.
  std::string key() const;
  bool operator==(const Configuration& other) const { return key() == other.key(); }
};

struct ConfigLess {
  bool operator()(const Configuration& a, const Configuration& b) const {
    return a.key() < b.key();
  }
};

using ConfigDist = FinDist<Configuration, ConfigLess>;

// Initial configuration (empty, p, empty, empty). Binders of p are renamed
// apart first, since the environment is a single global map.
Configuration initial_config(const Comp& p);

// A split t = C[rho] of an extended expression.
struct Decomposition {
  enum class Kind {
    kTerminal,    // return v, memfn or fresh with no enclosing context
    kLetRedex,    // let val x <- r in u with r terminal
    kMemoReturn,  // {{return v}}^{f,a}_gamma
    kRedex,       // if, match, flip, ==, @
  };
  Kind kind = Kind::kTerminal;
  std::vector<Frame> context;  // outermost first; the hole sits innermost
  CompPtr redex;
};

// Throws RuntimeError for stuck terms.
Decomposition decompose(const ExtTerm& t);
ExtTerm recompose(const std::vector<Frame>& context, CompPtr c);

bool is_terminal(const Configuration& c);

struct Branch {
  Rat prob;
  Configuration config;
};

// One reduction step. Every rule is deterministic except flip, which
// yields the true branch first. Zero-probability branches are dropped.
std::vector<Branch> step(const Configuration& c);

inline constexpr size_t kDefaultStepBudget = 100000;

struct SampleOptions {
  uint64_t seed = 0;
  // Outcomes for the first flips, in order; later flips use the PRNG.
  std::vector<bool> forced_flips;
  size_t step_budget = kDefaultStepBudget;
};

struct SampleRun {
  Configuration terminal;
  std::vector<Configuration> trace;  // starts at the initial configuration
};

// A flip(theta) draw takes a 53-bit integer k from mt19937_64 and returns
// true iff k / 2^53 < theta, compared exactly.
SampleRun run_sampled(const Comp& p, const SampleOptions& options = {});

struct EnumerateOptions {
  size_t step_budget = kDefaultStepBudget;
  // Called on every reachable configuration (serial enumeration only).
  std::function<void(const Configuration&)> on_config;
};

ConfigDist enumerate_bigstep_serial(const Comp& p, const EnumerateOptions& options = {});
// Expands a frontier of flip branches and unfolds them with OpenMP.
ConfigDist enumerate_bigstep(const Comp& p, const EnumerateOptions& options = {});

struct Judgement {
  TyCtx ctx;
  MemoStack stack;
  Ty type;
};

// Throws RuntimeError when no judgement can be derived.
Judgement config_judgement(const Configuration& c);

bool check_stack_invariants(const Configuration& c);

// Support-restricted, canonically relabeled view of a terminal
// configuration.
struct Observation {
  EnvValue value;
  Bigraph graph;
  struct ObservedClosure {
    std::string body;  // alpha-canonical "memfn x. u"
    Env env;           // restricted to the free variables
  };
  std::map<FunLabel, ObservedClosure> closures;

  std::string key() const;
};

struct ObservationLess {
  bool operator()(const Observation& a, const Observation& b) const {
    return a.key() < b.key();
  }
};

using ObservationDist = FinDist<Observation, ObservationLess>;

// For a top-level fresh or memfn terminal the node is allocated first.
Observation observe(const Configuration& c);
ObservationDist observational_bigstep(const Comp& p);

// Value computed by a terminal configuration, allocating a node for
// top-level fresh/memfn terminals. Also returns the updated configuration.
std::pair<EnvValue, Configuration> terminal_value(const Configuration& c);

std::string pretty(const Configuration& c);

}  // namespace memlang

#endif  // MEMLANG_OPSEM_H_
