#include <benchmark/benchmark.h>

#include "hodgewave/dynamics.hpp"
#include "hodgewave/shapes.hpp"

#include <random>

using namespace hodgewave;

namespace {

struct Fixture {
  SimplicialComplex cx;
  BoundaryComplex bd;
  HodgeMetric metric;
  MaterialFields fields;
  TraceOperators ops;

  explicit Fixture(int nx) {
    cx = buildComplex(shapes::rectangle(1.0, 0.5, nx, nx / 2));
    bd = extractBoundary(cx);
    metric = buildMetric(cx, bd);
    metric.complex = &cx;
    fields = MaterialFields::uniform(cx, 1.0, 1.0);
    ops = buildTraceOperators(cx, bd, metric);
  }
};

State randomState(const SimplicialComplex& cx, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  State s;
  s.omega.resize(cx.count(0));
  s.nu.resize(cx.count(1));
  for (int i = 0; i < s.omega.size(); ++i) s.omega[i] = dist(rng);
  for (int i = 0; i < s.nu.size(); ++i) s.nu[i] = dist(rng);
  return s;
}

void BM_BuildComplex(benchmark::State& state) {
  RawMesh mesh = shapes::rectangle(1.0, 0.5, static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(0)) / 2);
  for (auto _ : state) {
    SimplicialComplex cx = buildComplex(mesh);
    benchmark::DoNotOptimize(cx.incidence);
  }
}
BENCHMARK(BM_BuildComplex)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_BuildMetric(benchmark::State& state) {
  SimplicialComplex cx = buildComplex(shapes::rectangle(
      1.0, 0.5, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2));
  BoundaryComplex bd = extractBoundary(cx);
  for (auto _ : state) {
    HodgeMetric metric = buildMetric(cx, bd);
    benchmark::DoNotOptimize(metric.m);
  }
}
BENCHMARK(BM_BuildMetric)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_TraceOperators(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    TraceOperators ops = buildTraceOperators(f.cx, f.bd, f.metric);
    benchmark::DoNotOptimize(ops.normalTrace);
  }
}
BENCHMARK(BM_TraceOperators)->Arg(16)->Arg(32)->Arg(64);

void BM_Codifferential(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  Cochain mu(1, randomState(f.cx, 3).nu);
  for (auto _ : state) {
    Cochain delta = codifferential(f.cx, f.metric, f.ops, mu);
    benchmark::DoNotOptimize(delta.values);
  }
}
BENCHMARK(BM_Codifferential)->Arg(16)->Arg(32)->Arg(64);

void BM_AssembleGenerator(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  BCSpec bc = BCSpec::impedance(f.bd.vertexCount(), 1.0);
  for (auto _ : state) {
    Generator gen = assembleGenerator(f.cx, f.metric, f.fields, f.ops, bc);
    benchmark::DoNotOptimize(gen.a);
  }
}
BENCHMARK(BM_AssembleGenerator)->Arg(16)->Arg(32)->Arg(64);

void BM_StepperFactorization(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  Generator gen =
      assembleGenerator(f.cx, f.metric, f.fields, f.ops, BCSpec::normalZero(f.bd.vertexCount()));
  double dt = defaultTimeStep(f.cx, f.metric, f.fields);
  for (auto _ : state) {
    MidpointStepper stepper(gen, dt);
    benchmark::DoNotOptimize(stepper.dt());
  }
}
BENCHMARK(BM_StepperFactorization)->Arg(16)->Arg(32)->Arg(64);

void BM_MidpointStep(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  Generator gen =
      assembleGenerator(f.cx, f.metric, f.fields, f.ops, BCSpec::normalZero(f.bd.vertexCount()));
  MidpointStepper stepper(gen, defaultTimeStep(f.cx, f.metric, f.fields));
  State x = randomState(f.cx, 7);
  for (auto _ : state) {
    x = stepper.step(x);
    benchmark::DoNotOptimize(x.omega);
  }
}
BENCHMARK(BM_MidpointStep)->Arg(16)->Arg(32)->Arg(64);

} // namespace

BENCHMARK_MAIN();
