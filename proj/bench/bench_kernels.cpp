// Serial reference against the OpenMP kernels: integer Hermite form, p-adic echelon form.
#include <benchmark/benchmark.h>

#include <random>

#include "iwlab/lattice.hpp"
#include "iwlab/parallel.hpp"
#include "iwlab/theorem_lab.hpp"

using namespace iwlab;

namespace {

std::vector<RatVec> random_rows(int rows, int dim) {
  std::mt19937 rng(11);
  std::vector<RatVec> g(rows, RatVec(dim));
  for (auto& r : g)
    for (auto& x : r) x = Rat(static_cast<long>(rng() % 2001) - 1000);
  return g;
}

void BM_IntHermite(benchmark::State& st) {
  ParallelScope mode(st.range(0) != 0);
  const int dim = static_cast<int>(st.range(1));
  auto g = random_rows(dim + 8, dim);
  for (auto _ : st) benchmark::DoNotOptimize(IntLattice::from_generators(dim, g));
}

void BM_PadicEchelon(benchmark::State& st) {
  ParallelScope mode(st.range(0) != 0);
  const long p = st.range(1);
  const int n = static_cast<int>(st.range(2));
  // generators computed once; only the elimination is timed
  auto img = log_image(p, n, LogSource::U, Projector::none, 0, default_precision(p, n), false);
  const int dim = static_cast<int>((p - 1) * ipow(p, n));
  for (auto _ : st) benchmark::DoNotOptimize(PadicLattice(p, dim, img.gens).digest());
}

}  // namespace

// first argument: 0 serial, 1 OpenMP
BENCHMARK(BM_IntHermite)->ArgsProduct({{0, 1}, {24, 48}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PadicEchelon)->ArgsProduct({{0, 1}, {5, 7}, {1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
