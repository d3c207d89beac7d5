#include <benchmark/benchmark.h>

#include <random>

#include "tvcat/corpus.hpp"
#include "tvcat/lofs.hpp"
#include "tvcat/vrel.hpp"

using namespace tvcat;

namespace {

MonadPtr ord() {
  static const MonadPtr m = instantiate_monad("identity", build_quantale("boolean"));
  return m;
}

const Corpus& ord_corpus() {
  static const Corpus c = build_corpus(ord(), {.max_size = 3});
  return c;
}

VRelation random_relation(const QuantalePtr& q, std::size_t n, std::mt19937_64& rng) {
  VRelation r(q, n, n);
  std::uniform_int_distribution<std::size_t> pick(0, q->size() - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.set(i, j, q->value(pick(rng)));
  return r;
}

// the corpus functor with the largest comma object
const Functor& widest() {
  static const Functor* best = [] {
    SpaceCache cache;
    const Functor* f = &ord_corpus().functors.front();
    std::size_t size = 0;
    for (const Functor& g : ord_corpus().functors) {
      const std::size_t k = comma_factorise(g, saturated_class("all"), cache)->k->size();
      if (k > size) size = k, f = &g;
    }
    return f;
  }();
  return *best;
}

}  // namespace

static void BM_Compose(benchmark::State& state) {
  const QuantalePtr q = build_quantale("lukasiewicz_chain", 4);
  std::mt19937_64 rng(1);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VRelation r = random_relation(q, n, rng), s = random_relation(q, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(compose(s, r));
}
BENCHMARK(BM_Compose)->Arg(8)->Arg(32)->Arg(64);

static void BM_LeftResidual(benchmark::State& state) {
  const QuantalePtr q = build_quantale("truncated_chain", 4);
  std::mt19937_64 rng(2);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VRelation r = random_relation(q, n, rng), t = random_relation(q, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(left_residual(t, r));
}
BENCHMARK(BM_LeftResidual)->Arg(8)->Arg(32);

static void BM_BuildCorpus(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_corpus(ord(), {.max_size = n}));
}
BENCHMARK(BM_BuildCorpus)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_PresheafSpace(benchmark::State& state) {
  const CategoryPtr x = ord_corpus().objects.back();
  const ClassPtr all = saturated_class("all");
  for (auto _ : state) benchmark::DoNotOptimize(presheaf_space(x, all));
}
BENCHMARK(BM_PresheafSpace);

static void BM_CommaFactorise(benchmark::State& state) {
  const ClassPtr all = saturated_class("all");
  for (auto _ : state) {
    SpaceCache cache;
    benchmark::DoNotOptimize(comma_factorise(widest(), all, cache));
  }
}
BENCHMARK(BM_CommaFactorise)->Unit(benchmark::kMicrosecond);

static void BM_AwfsAt(benchmark::State& state) {
  const ClassPtr all = saturated_class("all");
  const AwfsOptions options{.force_streaming = state.range(0) != 0};
  for (auto _ : state) {
    SpaceCache cache;
    benchmark::DoNotOptimize(check_awfs_at(widest(), all, cache, options));
  }
}
BENCHMARK(BM_AwfsAt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Memberships(benchmark::State& state) {
  const ClassPtr all = saturated_class("all");
  for (auto _ : state) {
    SpaceCache cache;
    std::size_t members = 0;
    for (const Functor& f : ord_corpus().functors) {
      members += l_membership(f, all, cache).member;
      members += r_membership(f, all, cache).member;
    }
    benchmark::DoNotOptimize(members);
  }
}
BENCHMARK(BM_Memberships)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
