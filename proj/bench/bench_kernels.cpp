// Parallel kernels against their serial references on a family of
// n independent readers (2^(n+1) - 1 states, since time passes for all of
// them at once).

#include <benchmark/benchmark.h>

#include <string>

#include "pafas/analysis.hpp"
#include "pafas/syntax.hpp"

using namespace pafas;

namespace {

Term readers(int n) {
    std::string text;
    for (int i = 0; i < n; ++i) {
        std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
        if (i) text += " |[]| ";
        text += "(" + a + " |> " + b + ".0)";
    }
    return parse_term(text, Dialect::R);
}

ExploreOptions options(bool parallel) {
    ExploreOptions o = default_explore_options();
    o.max_states = 1'000'000;
    o.parallel = parallel;
    return o;
}

void BM_explore_serial(benchmark::State& st) {
    Term t = readers(static_cast<int>(st.range(0)));
    std::size_t n = 0;
    for (auto _ : st) n = explore_serial(t, Dialect::R, options(false)).state_count();
    st.counters["states"] = static_cast<double>(n);
}

void BM_explore_parallel(benchmark::State& st) {
    Term t = readers(static_cast<int>(st.range(0)));
    std::size_t n = 0;
    for (auto _ : st) n = explore(t, Dialect::R, options(true)).state_count();
    st.counters["states"] = static_cast<double>(n);
}

void bisim_bench(benchmark::State& st, bool parallel) {
    Graph g = to_graph(explore(readers(static_cast<int>(st.range(0))), Dialect::R, options(true)), BisimScheme::RSense);
    for (auto _ : st) benchmark::DoNotOptimize(bisim_classes(g, parallel));
    st.counters["states"] = static_cast<double>(g.out.size());
}

void BM_bisim_serial(benchmark::State& st) { bisim_bench(st, false); }
void BM_bisim_parallel(benchmark::State& st) { bisim_bench(st, true); }

} // namespace

BENCHMARK(BM_explore_serial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_explore_parallel)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bisim_serial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bisim_parallel)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
