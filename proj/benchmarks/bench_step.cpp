// Microbenchmarks for the per-step kernel cost of the three schemes.
// The interesting quantity is the per-node-step time and how the Newton
// overhead of the implicit scheme amortizes as q grows.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "slbm/runner.hpp"

using namespace slbm;

namespace {

struct Fixture {
  RunSetup setup;
  SolverState state;
  Stepper stepper;

  explicit Fixture(const CaseSpec& spec)
      : setup(build_run(spec)),
        state(make_state(setup.lattice, setup.nx, setup.ny, setup.config, setup.theta0)),
        stepper(setup.lattice, setup.nx, setup.ny, setup.boundaries) {}
};

CaseSpec case_1d(Method m, int n) {
  auto spec = preset("stefan1d");
  apply_override(spec, std::string("method=") + std::string(to_string(m)));
  apply_override(spec, "n=" + std::to_string(n));
  apply_override(spec, "delta=0.01");
  return spec;
}

CaseSpec case_2d(Method m, int n, const char* lattice) {
  auto spec = preset("freeze2d");
  apply_override(spec, std::string("method=") + std::string(to_string(m)));
  apply_override(spec, std::string("lattice=") + lattice);
  apply_override(spec, "n=" + std::to_string(n));
  apply_override(spec, "delta=0.01");
  return spec;
}

void run_steps(benchmark::State& bench, const CaseSpec& spec) {
  Fixture f(spec);
  long nodes = static_cast<long>(f.setup.nx) * f.setup.ny;
  for (auto _ : bench) {
    f.stepper.step(f.state);
    benchmark::DoNotOptimize(f.state.theta.data());
  }
  bench.SetItemsProcessed(bench.iterations() * nodes);
}

void BM_Step1D_EEBM(benchmark::State& s) { run_steps(s, case_1d(Method::EEBM, s.range(0))); }
void BM_Step1D_IREBM(benchmark::State& s) { run_steps(s, case_1d(Method::IREBM, s.range(0))); }
void BM_Step1D_ILFBM(benchmark::State& s) { run_steps(s, case_1d(Method::ILFBM, s.range(0))); }

void BM_Step2D_D2Q5_EEBM(benchmark::State& s) {
  run_steps(s, case_2d(Method::EEBM, static_cast<int>(s.range(0)), "d2q5"));
}
void BM_Step2D_D2Q5_IREBM(benchmark::State& s) {
  run_steps(s, case_2d(Method::IREBM, static_cast<int>(s.range(0)), "d2q5"));
}
void BM_Step2D_D2Q9_EEBM(benchmark::State& s) {
  run_steps(s, case_2d(Method::EEBM, static_cast<int>(s.range(0)), "d2q9"));
}
void BM_Step2D_D2Q9_IREBM(benchmark::State& s) {
  run_steps(s, case_2d(Method::IREBM, static_cast<int>(s.range(0)), "d2q9"));
}

} // namespace

BENCHMARK(BM_Step1D_EEBM)->Arg(201)->Arg(801)->Arg(1601);
BENCHMARK(BM_Step1D_IREBM)->Arg(201)->Arg(801)->Arg(1601);
BENCHMARK(BM_Step1D_ILFBM)->Arg(201)->Arg(801);
BENCHMARK(BM_Step2D_D2Q5_EEBM)->Arg(101)->Arg(201);
BENCHMARK(BM_Step2D_D2Q5_IREBM)->Arg(101)->Arg(201);
BENCHMARK(BM_Step2D_D2Q9_EEBM)->Arg(101)->Arg(201);
BENCHMARK(BM_Step2D_D2Q9_IREBM)->Arg(101)->Arg(201);

BENCHMARK_MAIN();
