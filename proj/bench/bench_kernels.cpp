// Serial reference kernels against their OpenMP versions. Set LSD_THREADS or
// OMP_NUM_THREADS to choose the thread count for the omp variants.
#include <benchmark/benchmark.h>

#include <random>

#include "lsd/kernels.hpp"
#include "lsd/parallel.hpp"
#include "lsd/spectral_model.hpp"

namespace {

using namespace lsd::kernels;

lsd::Matrix random_panel(std::size_t p, std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  lsd::Matrix x(p, n);
  for (auto& v : x.data()) v = g(rng);
  return x;
}

template <auto Kernel>
void BM_Covariance(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto x = random_panel(p, 5 * p);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p * p * 5 * p / 2));
}

template <auto Kernel>
void BM_FilterProfile(benchmark::State& state) {
  const auto f = lsd::arma_filter({0.9, 0.3, 1.0});
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Kernel(f.coeffs, 0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_SolveSweep(benchmark::State& state) {
  const auto op = lsd::StieltjesOperator::closed_form({0.4, 0.2, 0.2});
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.25 + 3.55 * i / (xs.size() - 1.0);
  std::vector<lsd::Solution> out(xs.size());
  const lsd::SolverConfig cfg;
  for (auto _ : state) {
    Kernel(op, xs, cfg, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_Covariance<serial::covariance>)->Name("covariance/serial")->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Covariance<omp::covariance>)->Name("covariance/omp")->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterProfile<serial::filter_profile>)->Name("filter_profile/serial")->Arg(1 << 16);
BENCHMARK(BM_FilterProfile<omp::filter_profile>)->Name("filter_profile/omp")->Arg(1 << 16);
BENCHMARK(BM_SolveSweep<serial::solve_sweep>)->Name("solve_sweep/serial")->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveSweep<omp::solve_sweep>)->Name("solve_sweep/omp")->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  lsd::apply_thread_limit_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
