#include <benchmark/benchmark.h>

#include "dendron/bpq.hpp"
#include "dendron/operad.hpp"
#include "dendron/presheaf.hpp"
#include "dendron/tree.hpp"

using namespace dendron;

static void BM_EnumerateHoms(benchmark::State& state) {
    Tree fig = Tree::from_parts(
        {"r0", "a", "e", "b", "f", "g", "c"}, "r0",
        {{"a", "r0"}, {"e", "r0"}, {"b", "e"}, {"f", "e"}, {"g", "e"}, {"c", "f"}},
        {"g"});
    Tree src = Tree::corolla(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto homs = enumerate_homs(src, fig);
        benchmark::DoNotOptimize(homs);
    }
}
BENCHMARK(BM_EnumerateHoms)->DenseRange(1, 3);

static void BM_CanonicalForm(benchmark::State& state) {
    auto trees = enumerate_trees(3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        for (const auto& t : trees) {
            auto cf = canonical_form(t);
            benchmark::DoNotOptimize(cf);
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(trees.size()));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(4, 6);

static void BM_OmegaSite(benchmark::State& state) {
    for (auto _ : state) {
        auto site = make_omega_site(2, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(site);
    }
}
BENCHMARK(BM_OmegaSite)->DenseRange(3, 5);

static void BM_NerveValues(benchmark::State& state) {
    auto ass = std::make_shared<Operad>(ass_operad(4));
    auto nerve = nerve_valuation(ass);
    auto trees = enumerate_trees(3, 5);
    for (auto _ : state) {
        for (const auto& t : trees) {
            auto vals = nerve.values(t);
            benchmark::DoNotOptimize(vals);
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(trees.size()));
}
BENCHMARK(BM_NerveValues);

static void BM_SigmaCensus(benchmark::State& state) {
    FinSet a = FinSet::skeleton(static_cast<int>(state.range(0)));
    FinSet l({"*"});
    for (auto _ : state) {
        auto census = check_pi0_census(a, l, 4);
        benchmark::DoNotOptimize(census);
    }
}
BENCHMARK(BM_SigmaCensus)->DenseRange(1, 3);

static void BM_PushoutDecomposition(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = check_lstar_pushout(static_cast<int>(state.range(0)), 2);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_PushoutDecomposition)->DenseRange(1, 3);

BENCHMARK_MAIN();
