#include <benchmark/benchmark.h>

#include <random>

#include "ftp/dsl.hpp"

namespace {

ftp::DslInstance grid(int side, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ftp::DslInstance d;
  d.directed = true;
  d.n = side * side;
  auto id = [side](int r, int c) { return r * side + c; };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) {
        d.arcs.push_back({id(r, c), id(r, c + 1), 1 + static_cast<ftp::Weight>(rng() % 4)});
        d.arcs.push_back({id(r, c + 1), id(r, c), 1 + static_cast<ftp::Weight>(rng() % 4)});
      }
      if (r + 1 < side) {
        d.arcs.push_back({id(r, c), id(r + 1, c), 1 + static_cast<ftp::Weight>(rng() % 4)});
        d.arcs.push_back({id(r + 1, c), id(r, c), 1 + static_cast<ftp::Weight>(rng() % 4)});
      }
    }
  }
  for (int i = 0; i < pairs; ++i) {
    d.sources.push_back(static_cast<int>(rng() % d.n));
    d.targets.push_back(static_cast<int>(rng() % d.n));
  }
  d.budget = 1000;
  return d;
}

void BM_MetricClosure(benchmark::State& state) {
  const auto d = grid(static_cast<int>(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ftp::metric_closure(d).size());
}
BENCHMARK(BM_MetricClosure)->Arg(4)->Arg(8);

void solve_with(benchmark::State& state, ftp::DslMethod method) {
  const auto d = grid(6, static_cast<int>(state.range(0)), 7);
  const auto h = ftp::metric_closure(d);
  for (auto _ : state) benchmark::DoNotOptimize(ftp::solve_dsl(d, h, {method}));
}

void BM_DslPatterns(benchmark::State& state) { solve_with(state, ftp::DslMethod::kPatterns); }
BENCHMARK(BM_DslPatterns)->Arg(1)->Arg(2)->Arg(3);

void BM_DslSubsetDp(benchmark::State& state) { solve_with(state, ftp::DslMethod::kSubsetDp); }
BENCHMARK(BM_DslSubsetDp)->Arg(1)->Arg(2)->Arg(3)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
