#include <benchmark/benchmark.h>

#include "ddlab/filters.hpp"

namespace {

// |y|^2 by the interval sum (equidistant) against the Bessel route (udd), at
// z = n + 1 where the UDD filter is in its transition region.
void EquidistantDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seq = ddlab::PulseSequence::equidistant(n);
  const double z = static_cast<double>(n + 1) * 1.3;
  for (auto _ : state) benchmark::DoNotOptimize(ddlab::y_abs_sq(seq, z));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(EquidistantDirect)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void UddBessel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seq = ddlab::PulseSequence::udd(n);
  const double z = static_cast<double>(n + 1) * 1.3;
  for (auto _ : state) benchmark::DoNotOptimize(ddlab::y_abs_sq(seq, z));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(UddBessel)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void UddAscending(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seq = ddlab::PulseSequence::udd(n);
  const double z = 0.05 * static_cast<double>(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(ddlab::y_abs_sq(seq, z));
}
BENCHMARK(UddAscending)->RangeMultiplier(4)->Range(4, 4096);

void MomentSeries(benchmark::State& state) {
  const auto seq = ddlab::PulseSequence::custom({0.1, 0.35, 0.65, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(ddlab::y_abs_sq(seq, 0.7));
}
BENCHMARK(MomentSeries);

}  // namespace
