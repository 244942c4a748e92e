#include "slbm/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "slbm/errors.hpp"

namespace slbm {

namespace {

FaceConditionType resolve_kind(const CaseSpec& spec, const FaceSpec& fs, const char* face) {
  switch (fs.kind) {
  case FaceSpec::Kind::Periodic: return FaceConditionType::Periodic;
  case FaceSpec::Kind::BounceBack: return FaceConditionType::BounceBack;
  case FaceSpec::Kind::DirichletOnQ: return FaceConditionType::DirichletOnQ;
  case FaceSpec::Kind::DirichletEquilibrium: return FaceConditionType::DirichletEquilibrium;
  case FaceSpec::Kind::NeumannOnQ: return FaceConditionType::NeumannOnQ;
  case FaceSpec::Kind::Dirichlet:
    return spec.method == Method::IREBM ? FaceConditionType::DirichletOnQ
                                        : FaceConditionType::DirichletEquilibrium;
  case FaceSpec::Kind::Neumann:
    // The q closure needs one undefined population per wall node, which only
    // holds on d2q5; everything else falls back to bounce-back.
    return spec.method == Method::IREBM && spec.lattice == LatticeKind::D2Q5
               ? FaceConditionType::NeumannOnQ
               : FaceConditionType::BounceBack;
  }
  throw ConfigError(std::string("boundaries.") + face + ": unsupported condition");
}

} // namespace

BoundarySpec resolve_boundaries(const CaseSpec& spec) {
  static const char* names[4] = {"x_min", "x_max", "y_min", "y_max"};
  BoundarySpec bc;
  for (int f = 0; f < 4; ++f) {
    const FaceSpec& fs = spec.boundaries[f];
    bc.faces[f].type = resolve_kind(spec, fs, names[f]);
    bc.faces[f].value = fs.value;
    bc.faces[f].value_next = fs.value; // constant boundary data
  }
  return bc;
}

RunSetup build_run(const CaseSpec& spec) {
  spec.validate();
  RunSetup setup;
  setup.lattice = make_lattice(spec.lattice);
  setup.nx = spec.n;
  setup.ny = spec.dimension == 2 ? spec.n : 1;
  setup.boundaries = resolve_boundaries(spec);

  setup.config.method = spec.method;
  setup.config.tau = spec.resolved_tau();
  setup.config.Ste = spec.ste;
  setup.config.delta = spec.delta;
  setup.config.newton_tol = spec.newton_tol;
  setup.config.newton_max_iter = spec.newton_max_iter;
  setup.config.inner_tol = spec.inner_tol;
  setup.config.inner_max_iter = spec.inner_max_iter;
  setup.config.validate();
  setup.boundaries.validate(setup.lattice, spec.method);

  setup.dx = spec.dx();
  setup.dt = spec.resolved_dt();

  if (spec.initial == InitialKind::StefanExact || (spec.dimension == 1 && spec.theta0 < 0)) {
    StefanCaseParams params{spec.ste, spec.theta0};
    if (spec.theta0 < 0) setup.oracle = solve_lambda(params);
  }

  const long nodes = static_cast<long>(setup.nx) * setup.ny;
  setup.theta0.assign(nodes, spec.theta_init);
  if (spec.initial == InitialKind::StefanExact) {
    if (!setup.oracle) throw ConfigError("case.initial: stefan_exact requires theta0 < 0");
    setup.t_start = initial_time_for_front(*setup.oracle, spec.x_front0);
    for (int ix = 0; ix < setup.nx; ++ix)
      setup.theta0[ix] = exact_theta(*setup.oracle, ix * setup.dx, setup.t_start);
  }

  // Dirichlet walls start at their prescribed value.
  auto impose = [&](int face) {
    const auto& c = setup.boundaries.faces[face];
    if (c.type != FaceConditionType::DirichletOnQ &&
        c.type != FaceConditionType::DirichletEquilibrium)
      return;
    const bool xface = face <= XMax;
    if (!xface && spec.dimension == 1) return;
    const int fixed = face == XMin ? 0 : face == XMax ? setup.nx - 1 : face == YMin ? 0 : setup.ny - 1;
    const int count = xface ? setup.ny : setup.nx;
    for (int k = 0; k < count; ++k) {
      const long node = xface ? fixed + static_cast<long>(setup.nx) * k
                              : k + static_cast<long>(setup.nx) * fixed;
      setup.theta0[node] = c.value;
    }
  };
  for (int f = 0; f < 4; ++f) impose(f);

  if (!(spec.t_end > setup.t_start))
    throw ConfigError("case.t_end: must exceed the start time " + std::to_string(setup.t_start));
  setup.steps = std::llround((spec.t_end - setup.t_start) / setup.dt);
  return setup;
}

RunReport run_case(const CaseSpec& spec) {
  const RunSetup setup = build_run(spec);
  const long nodes = static_cast<long>(setup.nx) * setup.ny;

  RunReport rep;
  rep.steps = setup.steps;
  rep.nx = setup.nx;
  rep.ny = setup.ny;
  rep.dx = setup.dx;
  rep.dt = setup.dt;
  rep.tau = setup.config.tau;
  rep.t_start = setup.t_start;
  rep.t_final = setup.t_start + setup.steps * setup.dt;
  rep.oracle = setup.oracle;

  SolverState state =
      make_state(setup.lattice, setup.nx, setup.ny, setup.config, setup.theta0);
  Stepper stepper(setup.lattice, setup.nx, setup.ny, setup.boundaries);

  const long cadence = spec.output.sample_every > 0
                           ? spec.output.sample_every
                           : std::max<long>(1, setup.steps / 500);

  auto sample = [&](long step) {
    const double t = setup.t_start + step * setup.dt;
    if (spec.dimension == 1 && setup.oracle) {
      const auto loc = locate_interface_1d(state.theta, setup.dx);
      if (loc.position)
        rep.trace.push(t, *loc.position, interface_position(*setup.oracle, t));
    }
    rep.conservation.push_back({t, total_enthalpy(state)});
  };

  std::vector<double> snap_times = spec.output.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  size_t next_snap = 0;

  long total_newton_iters = 0;
  long total_inner_iters = 0;

  sample(0);
  const auto t0 = std::chrono::steady_clock::now();
  for (long step = 1; step <= setup.steps; ++step) {
    const StepStats st = stepper.step(state);
    total_newton_iters += st.newton_iterations;
    rep.newton_iter_max = std::max(rep.newton_iter_max, st.newton_iter_max);
    rep.newton_residual_max = std::max(rep.newton_residual_max, st.newton_residual_max);
    total_inner_iters += st.inner_iterations;
    rep.inner_iter_max = std::max(rep.inner_iter_max, st.inner_iterations);
    rep.dirichlet_deviation_max = std::max(rep.dirichlet_deviation_max, st.dirichlet_deviation_max);
    rep.neumann_deviation_max = std::max(rep.neumann_deviation_max, st.neumann_deviation_max);

    if (step % cadence == 0 || step == setup.steps) sample(step);
    const double t = setup.t_start + step * setup.dt;
    if (next_snap < snap_times.size() && t >= snap_times[next_snap]) {
      rep.snapshots.emplace_back(t, state.theta);
      ++next_snap;
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (setup.steps > 0) {
    rep.newton_iter_mean =
        static_cast<double>(total_newton_iters) / (static_cast<double>(nodes) * setup.steps);
    rep.inner_iter_mean = static_cast<double>(total_inner_iters) / setup.steps;
  }
  rep.final_theta = state.theta;
  rep.final_ell = state.ell;
  if (spec.dimension == 1 && setup.oracle)
    rep.final_linf = linf_error(state.theta, *setup.oracle, setup.dx, rep.t_final);

  // --- requested outputs ---
  const auto& out = spec.output;
  const bool any_output = !out.interface_trace.empty() || !out.final_profile.empty() ||
                          !out.diagonal_profile.empty() || !out.isolines.empty() ||
                          !out.conservation_trace.empty();
  if (any_output) {
    namespace fs = std::filesystem;
    fs::create_directories(out.dir);
    auto path = [&](const std::string& name) { return (fs::path(out.dir) / name).string(); };

    Metadata meta;
    std::ostringstream hash;
    hash << std::hex << case_hash(spec);
    meta["case_hash"] = hash.str();
    meta["method"] = std::string(to_string(spec.method));
    meta["n"] = std::to_string(spec.n);
    meta["tau"] = std::to_string(setup.config.tau);
    meta["dt"] = std::to_string(setup.dt);
    meta["delta"] = std::to_string(spec.delta);
    meta["ste"] = std::to_string(spec.ste);
    meta["t_start"] = std::to_string(setup.t_start);
    meta["t_final"] = std::to_string(rep.t_final);

    if (!out.interface_trace.empty())
      write_interface_trace_csv(path(out.interface_trace), meta, rep.trace);
    if (!out.conservation_trace.empty())
      write_conservation_csv(path(out.conservation_trace), meta, rep.conservation);
    if (!out.final_profile.empty()) {
      std::vector<double> xs(setup.nx);
      for (int i = 0; i < setup.nx; ++i) xs[i] = i * setup.dx;
      if (spec.dimension == 1) {
        std::vector<double> exact;
        if (setup.oracle) {
          exact.resize(setup.nx);
          for (int i = 0; i < setup.nx; ++i)
            exact[i] = exact_theta(*setup.oracle, i * setup.dx, rep.t_final);
        }
        write_profile_csv(path(out.final_profile), meta, xs, state.theta, exact);
      } else {
        // 2D: the final profile output is the diagonal cut.
        write_diagonal_csv(path(out.final_profile), meta,
                           sample_diagonal(state.theta, setup.nx, setup.ny, setup.dx));
      }
    }
    auto snapshot_name = [&](const std::string& base, size_t k) {
      const size_t dot = base.find_last_of('.');
      std::ostringstream os;
      if (dot == std::string::npos)
        os << base << "_t" << k;
      else
        os << base.substr(0, dot) << "_t" << k << base.substr(dot);
      return os.str();
    };
    if (spec.dimension == 2 && !out.diagonal_profile.empty()) {
      write_diagonal_csv(path(out.diagonal_profile), meta,
                         sample_diagonal(state.theta, setup.nx, setup.ny, setup.dx));
      for (size_t k = 0; k < rep.snapshots.size(); ++k) {
        Metadata m = meta;
        m["time"] = std::to_string(rep.snapshots[k].first);
        write_diagonal_csv(path(snapshot_name(out.diagonal_profile, k)), m,
                           sample_diagonal(rep.snapshots[k].second, setup.nx, setup.ny, setup.dx));
      }
    }
    if (spec.dimension == 2 && !out.isolines.empty() && !out.isoline_levels.empty()) {
      write_isolines_csv(path(out.isolines), meta,
                         extract_isolines_2d(state.theta, setup.nx, setup.ny, setup.dx,
                                             out.isoline_levels));
      for (size_t k = 0; k < rep.snapshots.size(); ++k) {
        Metadata m = meta;
        m["time"] = std::to_string(rep.snapshots[k].first);
        write_isolines_csv(path(snapshot_name(out.isolines, k)), m,
                           extract_isolines_2d(rep.snapshots[k].second, setup.nx, setup.ny,
                                               setup.dx, out.isoline_levels));
      }
    }
  }
  return rep;
}

double measure_step_seconds(const CaseSpec& spec, long steps, int repeats) {
  const RunSetup setup = build_run(spec);
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, repeats); ++r) {
    SolverState state =
        make_state(setup.lattice, setup.nx, setup.ny, setup.config, setup.theta0);
    Stepper stepper(setup.lattice, setup.nx, setup.ny, setup.boundaries);
    const auto t0 = std::chrono::steady_clock::now();
    for (long s = 0; s < steps; ++s) stepper.step(state);
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, sec);
  }
  return best;
}

} // namespace slbm
