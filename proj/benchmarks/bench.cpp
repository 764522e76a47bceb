#include <benchmark/benchmark.h>

#include <random>

#include "delas/parser.hpp"
#include "delas/reduction.hpp"
#include "delas/search.hpp"
#include "delas/semantics.hpp"
#include "delas/sugar.hpp"

using namespace delas;

namespace {

KripkeModel example1() {
  KripkeModel m;
  m.worlds = {"s", "t"};
  m.domain = {"o1", "o2"};
  m.agents = {"i"};
  m.relations["i"] = {{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}};
  m.rho["P"]["s"] = {{"o1"}};
  m.rho["P"]["t"] = {{"o2"}};
  m.eta["a"]["s"] = "o1";
  m.eta["a"]["t"] = "o2";
  m.eta["b"]["s"] = "o2";
  m.eta["b"]["t"] = "o1";
  m.signature["P"] = 1;
  return m;
}

Formula deep_dynamic() {
  std::mt19937_64 rng(1);
  GenOptions g = default_gen_options();
  g.max_depth = 4;
  g.dynamic_prob = 0.5;
  return random_formula(rng, g);
}

}  // namespace

static void BM_EvalStatic(benchmark::State& state) {
  KripkeModel m = example1();
  Formula f = sugar::kv("i", Term::name("a"));
  for (auto _ : state) benchmark::DoNotOptimize(eval(m, "s", {}, f));
}
BENCHMARK(BM_EvalStatic);

static void BM_EvalDynamic(benchmark::State& state) {
  KripkeModel m = example1();
  Formula f = deep_dynamic();
  Assignment sigma{{"x", "o1"}, {"y", "o1"}};
  for (auto _ : state) benchmark::DoNotOptimize(eval(m, "s", sigma, f));
}
BENCHMARK(BM_EvalDynamic);

static void BM_Translate(benchmark::State& state) {
  Formula f = deep_dynamic();
  for (auto _ : state) benchmark::DoNotOptimize(translate(f));
}
BENCHMARK(BM_Translate);

static void BM_Enumerate(benchmark::State& state) {
  Formula f = sugar::implies(Formula::know("i", Formula::pred("P", {Term::name("a")})),
                             Formula::pred("P", {Term::name("a")}));
  Bounds b;
  EnumSignature sig = signature_of(f);
  for (auto _ : state) {
    std::uint64_t n = enumerate_models(b, sig, [](const PointedModel&) { return true; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_Enumerate);

static void BM_Parse(benchmark::State& state) {
  Signature sig;
  sig.predicates["P"] = 1;
  std::string text = "[x := a]K{i}(P(x) & ~(x != a)) -> Kv{i} a";
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(text, sig));
}
BENCHMARK(BM_Parse);

BENCHMARK_MAIN();
