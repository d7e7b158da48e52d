// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "rmsv/ensembles.hpp"
#include "rmsv/nets.hpp"

namespace {

void BM_SampleGaussianMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rmsv::sample_matrix(rmsv::EntryDistribution::gaussian(), n, n, rmsv::SeedPath{1, trial++, 0, 0}));
  }
}
BENCHMARK(BM_SampleGaussianMatrix)->Arg(64)->Arg(256);

void BM_SampleRademacherMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rmsv::sample_matrix(rmsv::EntryDistribution::rademacher(), n, n, rmsv::SeedPath{1, trial++, 0, 0}));
  }
}
BENCHMARK(BM_SampleRademacherMatrix)->Arg(256);

void BM_LevyConcentration(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmsv::levy_concentration(rmsv::EntryDistribution::gaussian(), 0.1,
                                                      static_cast<std::size_t>(state.range(0)),
                                                      rmsv::SeedPath{2, 0, 0, 0}));
  }
}
BENCHMARK(BM_LevyConcentration)->Arg(10000)->Arg(100000);

void BM_BuildNet(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmsv::build_net(static_cast<std::size_t>(state.range(0)), 0.5, rmsv::SeedPath{3, 0, 0, 0}, 10000));
  }
}
BENCHMARK(BM_BuildNet)->Arg(2)->Arg(4);

}  // namespace
