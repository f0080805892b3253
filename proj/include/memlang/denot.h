// Denotational semantics in the probabilistic local state monad.
//
// A computation at a total world g is evaluated at a bias state
// (FunLabel -> Rat on g's functions) and yields a finite distribution over
// coend classes. A class is stored in canonical form: the world is g plus
// only those fresh nodes that occur in the value, numbered from
// g.next_fun() / g.next_atom() in first-occurrence order of the value's
// leaves, and fresh functions carry their bias.

#ifndef MEMLANG_DENOT_H_
#define MEMLANG_DENOT_H_

#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "memlang/bigraph.h"
#include "memlang/dist.h"
#include "memlang/opsem.h"
#include "memlang/rational.h"
#include "memlang/syntax.h"
#include "memlang/value.h"

namespace memlang {

using Biases = std::map<FunLabel, Rat>;

struct CoendClass {
  Bigraph world;
  EnvValue value;
  Biases fresh_biases;

  std::string key() const;
  bool operator==(const CoendClass& other) const { return key() == other.key(); }
};

struct ClassLess {
  bool operator()(const CoendClass& a, const CoendClass& b) const { return a.key() < b.key(); }
};

using ClassDist = FinDist<CoendClass, ClassLess>;

// Representative of [value, biases]_g for a value living in h, which must
// contain g with the same labels and edges.
CoendClass canonicalize(const Bigraph& g, const Bigraph& h, const EnvValue& value,
                        const Biases& biases);

// Counters filled by the structural checks run on every evaluated
// distribution.
struct DenStats {
  std::atomic<size_t> distributions{0};
  std::atomic<size_t> classes{0};
  std::atomic<size_t> bool_classes{0};
  std::atomic<size_t> atom_classes{0};
  std::atomic<size_t> fun_classes{0};
};

struct DenOptions {
  // Verifies class shapes: boolean classes carry no fresh node, atom
  // classes at most one fresh atom, function classes at most one fresh
  // function. Violations throw DenotationError.
  bool check_shapes = true;
  DenStats* stats = nullptr;
};

// An element of T(X)(g): an evaluator indexed by bias states on g.
struct MonValue {
  Bigraph base;
  std::function<ClassDist(const Biases&)> run;

  ClassDist operator()(const Biases& lambda) const { return run(lambda); }
};

// Continuation of a bind: world h extending the base, value over h.
using Kleisli = std::function<MonValue(const Bigraph& h, const EnvValue& x)>;

MonValue unit(const Bigraph& g, const EnvValue& value);
MonValue bind(const MonValue& m, const Kleisli& k);
// Pushes m along iota. Pairs between the class's fresh nodes and the
// target's new nodes are sampled: a fresh function uses its own bias, a
// new function of the target uses the target bias state.
MonValue transport(const MonValue& m, const Embedding& iota);

MonValue den_flip(const Bigraph& g, const Rat& theta);
MonValue den_app(const Bigraph& g, FunLabel f, AtomLabel a);
MonValue den_eq(const Bigraph& g, AtomLabel a1, AtomLabel a2);
MonValue den_fresh(const Bigraph& g);

// Weight of the class `true`. Throws DenotationError if a class is not a
// bare boolean.
Rat prob_true(const ClassDist& d);

ClassDist den_mem(const Bigraph& g, const Env& env, const Ident& binder, const CompPtr& body,
                  const Biases& lambda, const DenOptions& options = {});

ClassDist den_comp(const Comp& c, const Bigraph& g, const Env& env, const Biases& lambda,
                   const DenOptions& options = {});
MonValue den_comp_value(CompPtr c, const Bigraph& g, const Env& env,
                        const DenOptions& options = {});

// Closed program at the empty world.
ClassDist denote(const Comp& p, const DenOptions& options = {});

// Argument of the memoized function: an existing atom of g, or a fresh
// atom with one connectivity bit per function of g (left() order).
using AtomQuery = std::variant<AtomLabel, std::vector<bool>>;

// Probability that the function returned by d is true at the query.
Rat mem_phi(const ClassDist& d, const Bigraph& g, const AtomQuery& query);

struct ConfigDenotation {
  ClassDist chain;  // chain rule over undefined edges
  ClassDist paper;  // one bias per function
};

// Plain-term configurations only. Classes are over the empty graph.
ConfigDenotation den_config_full(const Configuration& c, const DenOptions& options = {});
ClassDist den_config(const Configuration& c, const DenOptions& options = {});

struct SoundnessReport {
  ClassDist lhs;
  ClassDist rhs;
  ClassDist rhs_paper;
  bool equal = false;
  bool paper_equal = false;
  size_t terminals = 0;
};

// lhs is the program's denotation; rhs sums den_config over the
// enumerated terminal configurations.
SoundnessReport check_soundness(const Comp& p, const DenOptions& options = {});
SoundnessReport check_soundness_serial(const Comp& p, const DenOptions& options = {});

struct DataflowReport {
  bool commute = false;
  bool discard = false;
  bool ok() const { return commute && discard; }
};

using LetPrefix = std::vector<std::pair<Ident, CompPtr>>;

// Compares let x1 <- t1 in let x2 <- t2 in u against the swapped order,
// and let x1 <- t1 in t2 against t2, each wrapped in the prefix lets.
DataflowReport check_dataflow(const CompPtr& t1, const CompPtr& t2, const CompPtr& u,
                              const Ident& x1, const Ident& x2, const LetPrefix& prefix = {},
                              const DenOptions& options = {});

CompPtr wrap_prefix(const LetPrefix& prefix, CompPtr body);

}  // namespace memlang

#endif  // MEMLANG_DENOT_H_
