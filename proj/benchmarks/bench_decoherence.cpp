#include <benchmark/benchmark.h>

#include "ddlab/analysis.hpp"
#include "ddlab/decoherence.hpp"

namespace {

void Chi(benchmark::State& state) {
  const auto seq = ddlab::PulseSequence::udd(static_cast<std::size_t>(state.range(0)));
  const ddlab::Bath bath = ddlab::OhmicBath(0.1);
  const double t = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ddlab::chi(seq, bath, t));
}
BENCHMARK(Chi)->ArgsProduct({{0, 10, 100}, {1, 100, 1000}})->Unit(benchmark::kMicrosecond);

void StorageTime(benchmark::State& state) {
  const auto scheme = state.range(0) == 0 ? ddlab::Scheme::equidistant : ddlab::Scheme::udd;
  const auto seq = ddlab::PulseSequence::make(scheme, 100);
  const ddlab::Bath bath = ddlab::OhmicBath(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(ddlab::storage_time(seq, bath, 1e-4));
}
BENCHMARK(StorageTime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
