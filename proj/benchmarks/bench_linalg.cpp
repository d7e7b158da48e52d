// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "rmsv/biortho.hpp"
#include "rmsv/ensembles.hpp"
#include "rmsv/linalg.hpp"

namespace {

rmsv::DenseMatrix gaussian(std::size_t n) {
  return rmsv::sample_matrix(rmsv::EntryDistribution::gaussian(), n, n, rmsv::SeedPath{1, 0, 0, 0});
}

void BM_SingularValuesJacobi(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rmsv::singular_values(a, rmsv::SvdMethod::jacobi));
}
BENCHMARK(BM_SingularValuesJacobi)->Arg(16)->Arg(32)->Arg(64);

void BM_SingularValuesGolubKahan(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rmsv::singular_values(a, rmsv::SvdMethod::golub_kahan));
}
BENCHMARK(BM_SingularValuesGolubKahan)->Arg(64)->Arg(128)->Arg(256);

void BM_HouseholderQr(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rmsv::householder_qr(a));
}
BENCHMARK(BM_HouseholderQr)->Arg(32)->Arg(128)->Arg(256);

void BM_Solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = gaussian(n);
  const rmsv::Vector b(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(rmsv::solve(a, b));
}
BENCHMARK(BM_Solve)->Arg(32)->Arg(128);

}  // namespace
