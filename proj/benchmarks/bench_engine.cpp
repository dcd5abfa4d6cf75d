#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "dynes/engine/consultation.hpp"
#include "dynes/kb/parser.hpp"
#include "dynes/sim/scenario.hpp"
#include "dynes/sim/simulation.hpp"

using namespace dynes;

namespace {

const std::string kData = DYNES_DATA_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

static void BM_ParseReactor(benchmark::State& state) {
    const std::string src = slurp(kData + "/reactor.krl");
    for (auto _ : state) benchmark::DoNotOptimize(parse_kb(src));
}
BENCHMARK(BM_ParseReactor);

static void BM_ReactorSimulation(benchmark::State& state) {
    const KnowledgeBase kb = load_kb_file(kData + "/reactor.krl");
    const Scenario sc = load_scenario(kData + "/reactor.scn.jsonl");
    EngineConfig config;
    config.use_cache = state.range(0) != 0;
    SimulationOptions opts;
    opts.created = "bench";
    for (auto _ : state) benchmark::DoNotOptimize(run_simulation(kb, sc, 50, config, opts));
    state.SetItemsProcessed(state.iterations() * 50);
    state.SetLabel(config.use_cache ? "cache" : "no cache");
}
BENCHMARK(BM_ReactorSimulation)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_DiagnosisConsultation(benchmark::State& state) {
    const KnowledgeBase kb = load_kb_file(kData + "/diagnosis.krl");
    for (auto _ : state) {
        Consultation c(kb, "car.fault");
        while (c.next()) c.answer_unknown();
        benchmark::DoNotOptimize(c.result());
    }
}
BENCHMARK(BM_DiagnosisConsultation)->Unit(benchmark::kMicrosecond);
