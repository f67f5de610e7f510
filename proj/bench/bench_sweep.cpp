#include <benchmark/benchmark.h>

#include "optosqueeze/floquet.hpp"
#include "optosqueeze/linres.hpp"
#include "optosqueeze/model.hpp"
#include "optosqueeze/sweep.hpp"

namespace os = optosqueeze;

namespace {

struct Setup {
  os::PhysParams params;
  os::DriveConfig drives;
  os::LtiModel model;
  os::FloquetModel lifted;
};

const Setup& setup() {
  static const Setup s = [] {
    os::PhysParams p;
    p.kappa_out = 1.0;
    p.omega_m = 20.0;
    p.gamma_m = 2e-5;
    p.n_th = 10.0;
    os::DriveConfig d;
    d.g_minus = os::coupling_for_cooperativity(p, 1e5);
    d.g_plus = os::impedance_match(p, d.g_minus);
    const os::LtiModel m = os::build_dissipative(p, d);
    return Setup{p, d, m, os::lift(m, p, d)};
  }();
  return s;
}

os::Execution mode(const benchmark::State& state) {
  return state.range(1) ? os::Execution::Parallel : os::Execution::Serial;
}

void BM_SpectrumSweep(benchmark::State& state) {
  const auto omegas = os::linear_grid(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(os::spectrum_sweep(setup().model, omegas, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FloquetSweep(benchmark::State& state) {
  const auto omegas = os::linear_grid(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(os::floquet_sweep(setup().lifted, omegas, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SpectrumSweep)->ArgNames({"points", "parallel"})->ArgsProduct({{1000, 10000}, {0, 1}});
BENCHMARK(BM_FloquetSweep)->ArgNames({"points", "parallel"})->ArgsProduct({{100, 1000}, {0, 1}});

BENCHMARK_MAIN();
