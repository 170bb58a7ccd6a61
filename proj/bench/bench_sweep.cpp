#include "raypareto/frontier.hpp"
#include "raypareto/mapping.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <string>

using namespace raypareto;

namespace {

Problem fixture(const char* name) { return load_problem_file(std::string(RAYPARETO_PROBLEM_DIR) + "/" + name); }

void sweep_nonconvex(benchmark::State& state, Execution exec) {
    const Problem p = fixture("nonconvex.prob");
    SweepConfig s;
    s.count = static_cast<std::size_t>(state.range(0));
    s.exec = exec;
    for (auto _ : state) benchmark::DoNotOptimize(sweep(p, s, ScanConfig{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void image_example1(benchmark::State& state, Execution exec) {
    const Problem p = fixture("example1.prob");
    const auto grid = sweep_2d(static_cast<std::size_t>(state.range(0)), 0.0, std::numbers::pi / 2);
    for (auto _ : state) benchmark::DoNotOptimize(image_sample(p, grid, 40, ScanConfig{}, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(sweep_nonconvex, serial, Execution::serial)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep_nonconvex, parallel, Execution::parallel)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(image_example1, serial, Execution::serial)->Arg(90)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(image_example1, parallel, Execution::parallel)->Arg(90)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
