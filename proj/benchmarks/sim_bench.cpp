#include <benchmark/benchmark.h>

#include "fueldisp/controller.hpp"
#include "fueldisp/plant.hpp"
#include "fueldisp/scenario.hpp"

using namespace fueldisp;

static void BM_RunOneLiter(benchmark::State& state) {
    const Scenario s = parse_scenario("@0 press 1\n@1000 press A\n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(s));
    }
    // 2,800 ticks per run.
    state.SetItemsProcessed(state.iterations() * 2800);
}
BENCHMARK(BM_RunOneLiter)->Unit(benchmark::kMillisecond);

static void BM_SimulationStep(benchmark::State& state) {
    Simulation sim;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.step());
    }
}
BENCHMARK(BM_SimulationStep);

static void BM_StepPlant(benchmark::State& state) {
    PlantState p(VolumeMicroliters{1'000'000'000'000}, FlowConstant{});
    for (auto _ : state) {
        p = step_plant(p, DurationMs{10}, MotorMode::Forward);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_StepPlant);

static void BM_HandleDigitThenBackspace(benchmark::State& state) {
    const Controller c;
    auto st = c.init().state;
    for (auto _ : state) {
        auto a = c.handle_key(st, SimTimeMs{0}, Key::D7);
        auto b = c.handle_key(a.state, SimTimeMs{0}, Key::Backspace);
        benchmark::DoNotOptimize(b);
        st = b.state;
    }
}
BENCHMARK(BM_HandleDigitThenBackspace);
BENCHMARK_MAIN();
