#include <benchmark/benchmark.h>

#include "mergepath/mergepath.hpp"

using namespace mergepath;

namespace {

AlgorithmConfig config(Algorithm a, double alpha, long n) {
  AlgorithmConfig c;
  c.algorithm = a;
  c.alpha = alpha;
  c.max_iterations = n;
  c.trace_level = TraceLevel::Summary;
  return c;
}

void run_method(benchmark::State& state, Algorithm a, double alpha_L) {
  const Index d = state.range(0);
  const ProblemSpec p = make_random_monotone_affine(5, d, 1.0, 0.0);
  const Vec z0 = random_point(6, d);
  const AlgorithmConfig c = config(a, alpha_L, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(run(c, p, z0).final_point);
  state.SetItemsProcessed(state.iterations() * c.max_iterations);
}

void BM_Feg(benchmark::State& s) { run_method(s, Algorithm::FEG, 0.5); }
void BM_Eag(benchmark::State& s) { run_method(s, Algorithm::EAG, 0.125); }
void BM_Aps(benchmark::State& s) { run_method(s, Algorithm::APS, 0.125); }
void BM_Ohm(benchmark::State& s) { run_method(s, Algorithm::OHM, 1.0); }
void BM_Eg(benchmark::State& s) { run_method(s, Algorithm::EG, 0.25); }

void BM_SmEagPlus(benchmark::State& state) {
  const Index d = state.range(0);
  const ProblemSpec p = make_random_scsc(5, d, 1.0, 0.01);
  const Vec z0 = random_point(6, d);
  const AlgorithmConfig c = config(Algorithm::SM_EAG_PLUS, sm_eag_max_step(1.0, 0.01), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(run(c, p, z0).final_point);
  state.SetItemsProcessed(state.iterations() * c.max_iterations);
}

void BM_AffineResolvent(benchmark::State& state) {
  const Index d = state.range(0);
  const ProblemSpec p = make_random_monotone_affine(5, d, 1.0, 0.0);
  const Resolvent J(p.B, 0.7);
  const Vec z = random_point(6, d);
  for (auto _ : state) benchmark::DoNotOptimize(J(z));
}

void BM_IterativeResolvent(benchmark::State& state) {
  const ProblemSpec p = make_figure1();
  const Resolvent J(p.B, 0.1);
  const Vec z = (Vec(2) << -2.0, 3.0).finished();
  for (auto _ : state) benchmark::DoNotOptimize(J(z));
}

void BM_ApgStar(benchmark::State& state) {
  const Index n = state.range(0);
  const ProblemSpec smooth = make_random_monotone_affine(5, 2 * n, 1.0, 0.0);
  const ProblemSpec p = make_composite(ProxBox{Vec::Constant(n, -1.0), Vec::Constant(n, 1.0)},
                                       ProxL1{0.1}, smooth, n);
  const Vec z0 = random_point(6, 2 * n);
  const AlgorithmConfig c = config(Algorithm::APG_STAR, 0.5, 100);
  for (auto _ : state) benchmark::DoNotOptimize(run(c, p, z0).final_point);
}

void BM_FegOhmBound(benchmark::State& state) {
  const ProblemSpec p = make_random_monotone_affine(5, 20, 1.0, 0.0);
  const Vec z0 = random_point(6, 20);
  AlgorithmConfig c = config(Algorithm::FEG, 0.5, 1000);
  c.trace_level = TraceLevel::Full;
  const IterateTrace feg = run(c, p, z0);
  const Vec z_star = halpern_reference(p, z0);
  for (auto _ : state) benchmark::DoNotOptimize(mp_bound_feg_ohm(feg, p, z_star).max_ratio);
}

}  // namespace

BENCHMARK(BM_Feg)->Arg(10)->Arg(100);
BENCHMARK(BM_Eag)->Arg(10)->Arg(100);
BENCHMARK(BM_Aps)->Arg(10)->Arg(100);
BENCHMARK(BM_Ohm)->Arg(10)->Arg(100);
BENCHMARK(BM_Eg)->Arg(10)->Arg(100);
BENCHMARK(BM_SmEagPlus)->Arg(10)->Arg(100);
BENCHMARK(BM_AffineResolvent)->Arg(10)->Arg(100);
BENCHMARK(BM_IterativeResolvent);
BENCHMARK(BM_ApgStar)->Arg(5)->Arg(50);
BENCHMARK(BM_FegOhmBound);

BENCHMARK_MAIN();
