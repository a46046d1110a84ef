// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "generator.h"
#include "liftlab/lifter.h"
#include "liftlab/machine.h"
#include "oracles.h"

namespace liftlab {
namespace {

std::vector<Program> random_programs(std::size_t n) {
  std::mt19937_64 rng(42);
  std::vector<Program> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(testing::prepare(testing::generate_program(rng)));
  return out;
}

void BM_LiftRandom(benchmark::State& state) {
  auto programs = random_programs(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lift_program(programs[i++ % programs.size()]));
  }
}
BENCHMARK(BM_LiftRandom);

void BM_EvalLoop(benchmark::State& state) {
  Program p = testing::load_data_program("intro_lift.stg");
  for (auto _ : state) benchmark::DoNotOptimize(eval(p));
}
BENCHMARK(BM_EvalLoop);

void BM_EvalLoopLifted(benchmark::State& state) {
  Program p = lift_program(testing::load_data_program("intro_lift.stg")).program;
  for (auto _ : state) benchmark::DoNotOptimize(eval(p));
}
BENCHMARK(BM_EvalLoopLifted);

void BM_Oracle(benchmark::State& state) {
  Program p = testing::load_data_program("growth_three.stg");
  for (auto _ : state) benchmark::DoNotOptimize(oracle_enumerate(p));
}
BENCHMARK(BM_Oracle);

}  // namespace
}  // namespace liftlab

BENCHMARK_MAIN();
