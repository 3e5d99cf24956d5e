#include <benchmark/benchmark.h>

#include <cstdlib>
#include <string>

#include "medflow/observer.hpp"
#include "medflow/scenario.hpp"

using namespace medflow;

namespace {

std::string scenario_path() {
  const char* dir = std::getenv("MEDFLOW_SCENARIO_DIR");
  return std::string(dir ? dir : MEDFLOW_SCENARIO_DIR) + "/running.json";
}

const Scenario& scenario() {
  static const Scenario sc = load_scenario(scenario_path());
  return sc;
}

const System& running() {
  static const auto sys = build_system(scenario());
  return *sys;
}

void BM_simulate_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(simulate_all_serial(running()));
}
void BM_simulate_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(simulate_all(running()));
}

void BM_init_view_serial(benchmark::State& st) {
  Query q;
  q.attributes = {"A", "C"};
  for (auto _ : st) benchmark::DoNotOptimize(init_view_serial(q, scenario().schema, scenario().space));
}
void BM_init_view_parallel(benchmark::State& st) {
  Query q;
  q.attributes = {"A", "C"};
  for (auto _ : st) benchmark::DoNotOptimize(init_view(q, scenario().schema, scenario().space));
}

void BM_lcp_serial(benchmark::State& st) {
  auto runs = simulate_all(running());
  for (auto _ : st) benchmark::DoNotOptimize(lcp_matrix_serial(runs));
}
void BM_lcp_parallel(benchmark::State& st) {
  auto runs = simulate_all(running());
  for (auto _ : st) benchmark::DoNotOptimize(lcp_matrix(runs));
}

void BM_check_properties(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(check_properties(running()));
}

}  // namespace

BENCHMARK(BM_simulate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_init_view_serial);
BENCHMARK(BM_init_view_parallel);
BENCHMARK(BM_lcp_serial);
BENCHMARK(BM_lcp_parallel);
BENCHMARK(BM_check_properties)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
