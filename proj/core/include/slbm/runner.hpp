#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "slbm/analytic.hpp"
#include "slbm/case_spec.hpp"
#include "slbm/csv.hpp"
#include "slbm/diagnostics.hpp"
#include "slbm/schemes.hpp"

namespace slbm {

/// Everything needed to drive a case by hand: resolved lattice, boundary
/// conditions, scheme configuration, initial data and time discretization.
struct RunSetup {
  LatticeDescriptor lattice;
  int nx = 0;
  int ny = 1;
  BoundarySpec boundaries;
  SchemeConfig config;
  std::vector<double> theta0;
  double dx = 0;
  double dt = 0;
  double t_start = 0;
  long steps = 0;
  std::optional<AnalyticSolution> oracle;
};

/// Resolves the parse-level boundary requests into concrete closures for
/// the chosen scheme and lattice.
BoundarySpec resolve_boundaries(const CaseSpec& spec);

/// Validates the spec and assembles the run (initial field, step count,
/// oracle). Does not execute anything.
RunSetup build_run(const CaseSpec& spec);

struct RunReport {
  double wall_seconds = 0;
  long steps = 0;
  int nx = 0, ny = 1;
  double dx = 0, dt = 0, tau = 0;
  double t_start = 0, t_final = 0;

  double newton_iter_mean = 0; // per node per step
  int newton_iter_max = 0;
  double newton_residual_max = 0;
  double inner_iter_mean = 0; // per step (ILFBM)
  int inner_iter_max = 0;
  double dirichlet_deviation_max = 0;
  double neumann_deviation_max = 0;

  std::vector<double> final_theta;
  std::vector<double> final_ell;
  InterfaceTrace trace;
  std::vector<std::array<double, 2>> conservation; // (time, total)
  std::vector<std::pair<double, std::vector<double>>> snapshots; // (time, theta)

  std::optional<AnalyticSolution> oracle;
  std::optional<double> final_linf; // 1D runs with an oracle
};

/// Executes the case start to finish: initializes per the spec, steps to
/// t_end, samples diagnostics at the configured cadence, writes the
/// requested CSV outputs and returns the report. Scheme failures propagate
/// as ConvergenceError carrying the step index.
RunReport run_case(const CaseSpec& spec);

/// Wall-clock seconds for `steps` steps of the assembled case, best of
/// `repeats` fresh runs. Used by the timing benchmarks; no diagnostics are
/// sampled.
double measure_step_seconds(const CaseSpec& spec, long steps, int repeats);

} // namespace slbm
