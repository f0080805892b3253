// Serial reference against the OpenMP kernels: big-step enumeration and
// the soundness check.

#include <benchmark/benchmark.h>

#include "memlang/denot.h"
#include "memlang/opsem.h"
#include "memlang/syntax.h"

namespace {

using namespace memlang;

const char* kProgram = R"(
let val f <- memfn x. flip(1/3) in
let val g <- memfn y. flip(1/2) in
let val a <- fresh() in
let val b <- fresh() in
let val c <- fresh() in
let val r1 <- f @ a in
let val r2 <- f @ b in
let val r3 <- g @ c in
let val r4 <- g @ a in
let val s <- flip(2/3) in
let val t <- flip(1/4) in
return ((r1, r2), ((r3, r4), (s, t)))
)";

const char* kSoundness = R"(
let val a <- fresh() in
let val b <- fresh() in
let val f <- memfn x. let val e <- x == a in if e then flip(1/2) else flip(1/3) in
let val g <- memfn y. flip(1/4) in
let val r1 <- f @ b in
let val r2 <- g @ a in
return (f, (r1, r2))
)";

void BM_EnumerateSerial(benchmark::State& state) {
  CompPtr p = parse_program(kProgram);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_bigstep_serial(*p));
}

void BM_EnumerateParallel(benchmark::State& state) {
  CompPtr p = parse_program(kProgram);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_bigstep(*p));
}

void BM_SoundnessSerial(benchmark::State& state) {
  CompPtr p = parse_program(kSoundness);
  for (auto _ : state) benchmark::DoNotOptimize(check_soundness_serial(*p));
}

void BM_SoundnessParallel(benchmark::State& state) {
  CompPtr p = parse_program(kSoundness);
  for (auto _ : state) benchmark::DoNotOptimize(check_soundness(*p));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SoundnessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SoundnessParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
