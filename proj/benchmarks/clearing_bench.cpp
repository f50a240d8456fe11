// Micro/meso benchmarks for the clearing pipeline on the 22-zone network:
// LP solve alone at growing column counts, and the full per-hour pipeline.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mgp/clearing.hpp"
#include "mgp/lp.hpp"
#include "mgp/market_data.hpp"
#include "mgp/network.hpp"

namespace {

using namespace mgp;

struct BenchBook {
    NetworkTopology topology;
    std::vector<Offer> offers;
    std::vector<TransitLimit> limits;
};

BenchBook make_book(int offer_count) {
    BenchBook book{load_topology_file(std::string(MGPCLEAR_FIXTURES_DIR) + "/golden22.topo"), {}, {}};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> price(0.0, 300.0);
    std::uniform_real_distribution<double> quantity(1.0, 400.0);
    std::uniform_int_distribution<int> zone(0, book.topology.zone_count() - 1);

    book.offers.reserve(static_cast<std::size_t>(offer_count));
    for (int i = 0; i < offer_count; ++i) {
        const Purpose purpose = (i % 2) == 0 ? Purpose::Sell : Purpose::Buy;
        book.offers.push_back({purpose, 1, zone(rng), quantity(rng), price(rng), i});
    }
    for (auto [a, b] : book.topology.edges()) {
        book.limits.push_back({a, b, 500.0});
        book.limits.push_back({b, a, 500.0});
    }
    return book;
}

void BM_clear_hour(benchmark::State& state) {
    const BenchBook book = make_book(static_cast<int>(state.range(0)));
    ClearingConfig config;
    for (auto _ : state) {
        ClearingResult result = clear_hour(book.offers, book.topology, book.limits, 1, config);
        benchmark::DoNotOptimize(result.welfare);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_clear_hour)->Arg(100)->Arg(400)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_solve_lp(benchmark::State& state) {
    const BenchBook book = make_book(static_cast<int>(state.range(0)));
    ClearingConfig config;
    ClearingTrace trace;
    clear_hour(book.offers, book.topology, book.limits, 1, config, &trace);
    for (auto _ : state) {
        for (const LinearProgram& lp : trace.lps) {
            LpSolution solution = solve_lp(lp);
            benchmark::DoNotOptimize(solution.objective);
        }
    }
}
BENCHMARK(BM_solve_lp)->Arg(100)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_build_clearing_lp(benchmark::State& state) {
    const BenchBook book = make_book(static_cast<int>(state.range(0)));
    // build_clearing_lp wants a forest, so open the ring the way the pipeline does
    const NetworkTopology opened = book.topology.without_edge(
        make_edge(book.topology.require_zone("CNOR"), book.topology.require_zone("CORS")));
    std::vector<TransitLimit> limits;
    for (const TransitLimit& l : book.limits) {
        if (opened.has_edge(l.from, l.to)) limits.push_back(l);
    }
    for (auto _ : state) {
        LinearProgram lp = build_clearing_lp(book.offers, opened, limits);
        benchmark::DoNotOptimize(lp.c.size());
    }
}
BENCHMARK(BM_build_clearing_lp)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
