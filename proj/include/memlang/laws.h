// Property suites over generated instances: the memoization equations in
// both semantics, the dataflow equations, the monad laws and naturality of
// the denotation.

#ifndef MEMLANG_LAWS_H_
#define MEMLANG_LAWS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "memlang/denot.h"
#include "memlang/generator.h"

namespace memlang {

struct LawFailure {
  size_t index = 0;
  std::string law;
  std::string detail;
};

struct LawReport {
  size_t cases = 0;
  size_t checks = 0;
  std::vector<LawFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Closed programs instantiating the memoization equations for one case.
struct MemPrograms {
  CompPtr one_sample;      // let f <- memfn x. u in f @ n
  CompPtr substituted;     // u[n/x]
  CompPtr two_samples;     // let f <- memfn x. u in (f @ n, f @ n)
  CompPtr diagonal;        // let v <- u[n/x] in return (v, v)
  CompPtr unfolded_lhs;    // calls of memfn x. u at several atoms
  CompPtr unfolded_rhs;    // same calls after unfolding the memo table at n
};

MemPrograms mem_programs(const MemCase& c);

// Each equation is checked with observational_bigstep and with denote.
LawReport run_mem_laws(size_t count, uint64_t seed, const GenOptions& options = {});
LawReport run_dataflow_laws(size_t count, uint64_t seed, const GenOptions& options = {});
// Unit and associativity laws at five random bias states on random total
// worlds with at most two functions and two atoms.
LawReport run_monad_laws(size_t count, uint64_t seed);
// transport(den at g, iota) = den at g' for one-sided extensions iota.
LawReport run_naturality(size_t count, uint64_t seed);

// Random total world and a bias state on it.
Bigraph random_world(std::mt19937_64& rng, size_t max_funs, size_t max_atoms);
Biases random_biases(std::mt19937_64& rng, const Bigraph& g);

std::string to_text(const ClassDist& d);
std::string to_text(const ObservationDist& d);

}  // namespace memlang

#endif  // MEMLANG_LAWS_H_
