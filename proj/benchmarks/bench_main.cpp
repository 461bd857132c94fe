#include <benchmark/benchmark.h>

#include "ddqe/dirac/correlator.hpp"
#include "ddqe/dirac/grid.hpp"
#include "ddqe/dirac/kernels.hpp"
#include "ddqe/dressed.hpp"
#include "ddqe/haar.hpp"
#include "ddqe/mat_exp.hpp"

namespace {

void BM_MatExp2x2(benchmark::State& state) {
  ddqe::RngStream rng(1);
  ddqe::ComplexMatrix h(2, 2);
  h << 1.0, ddqe::cplx(0.3, 0.2), ddqe::cplx(0.3, -0.2), -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ddqe::mat_exp(h, ddqe::cplx(0, -0.37)));
  }
}
BENCHMARK(BM_MatExp2x2);

void BM_MatExpHermitian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ddqe::RngStream rng(2);
  ddqe::ComplexMatrix h(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) h(i, j) = ddqe::cplx(rng.gaussian(), rng.gaussian());
  h = ddqe::hermitize(h);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ddqe::mat_exp(h, ddqe::cplx(0, -0.5)));
  }
}
BENCHMARK(BM_MatExpHermitian)->Arg(4)->Arg(8)->Arg(16);

void BM_HaarUnitary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ddqe::RngStream rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ddqe::haar_unitary(d, rng));
  }
}
BENCHMARK(BM_HaarUnitary)->Arg(2)->Arg(3)->Arg(8);

void BM_LindbladKernelBuild(benchmark::State& state) {
  ddqe::CentralSpinEnsembleSpec spec;
  spec.omega = 1.0;
  spec.delta_sq_mean = 0.04;
  auto ens = ddqe::HamiltonianEnsemble::central_spin(spec);
  const auto grid = ddqe::uniform_grid(10.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ddqe::build_lindblad(ens, grid));
  }
}
BENCHMARK(BM_LindbladKernelBuild)->Arg(1000)->Arg(10000);

void BM_SplitStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = ddqe::dirac::CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  ddqe::RngStream rng(4);
  auto st = ddqe::dirac::gaussian_grid_state(n, n / 16.0, 4.0, 2.0);
  st.mass_field = ddqe::dirac::sample_mass_field(spec, n, st.dx, rng);
  ddqe::dirac::GridEvolver ev(st, 1.0, 1.0, 0.01);
  for (auto _ : state) {
    ev.steps(1);
  }
}
BENCHMARK(BM_SplitStep)->Arg(1024)->Arg(4096);

void BM_KernelGridEval(benchmark::State& state) {
  const auto spec = ddqe::dirac::CorrelatorSpec::gaussian_correlator(2.56, 1.0);
  const ddqe::dirac::DisorderKernels ker(spec, 16.0, 10.0);
  std::vector<double> s(129), q(129);
  for (int i = 0; i < 129; ++i) {
    s[i] = -32.0 + 64.0 * i / 128.0;
    q[i] = -2.0 + 4.0 * i / 128.0;
  }
  Eigen::MatrixXcd fg, fu;
  for (auto _ : state) {
    ker.eval_grid(s, q, 5.0, fg, fu);
    benchmark::DoNotOptimize(fg.data());
  }
}
BENCHMARK(BM_KernelGridEval);

}  // namespace

BENCHMARK_MAIN();
