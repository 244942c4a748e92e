#include "slbm/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slbm/errors.hpp"

namespace slbm {

std::string_view to_string(Method m) {
  switch (m) {
  case Method::EEBM: return "eebm";
  case Method::ILFBM: return "ilfbm";
  case Method::IREBM: return "irebm";
  }
  return "?";
}

void SchemeConfig::validate() const {
  if (!(tau > 0.5)) throw ConfigError("scheme.tau: must be > 1/2 for a positive diffusivity");
  if (!(Ste > 0)) throw ConfigError("scheme.ste: must be > 0");
  if (method == Method::IREBM && !(delta > 0))
    throw ConfigError("scheme.delta: must be > 0 for irebm");
  if (!(newton_tol > 0)) throw ConfigError("scheme.newton_tol: must be > 0");
  if (newton_max_iter < 1) throw ConfigError("scheme.newton_max_iter: must be >= 1");
  if (!(inner_tol > 0)) throw ConfigError("scheme.inner_tol: must be > 0");
  if (inner_max_iter < 1) throw ConfigError("scheme.inner_max_iter: must be >= 1");
}

double newton_update(double theta_k, double m0, double theta_old, double Ste, double delta) {
  const double pt = phi_delta(theta_old, delta);
  const double p = phi_delta(theta_k, delta);
  const double dp = phi_delta_prime(theta_k, delta);
  return (m0 + (pt + dp * theta_k - p) / Ste) / (1.0 + dp / Ste);
}

namespace {

// F(t) = t + phi_delta(t)/Ste - m0 - phi_old/Ste; strictly increasing in t.
inline double regularized_residual(double t, double m0, double phi_old, double Ste, double delta) {
  return t + phi_delta(t, delta) / Ste - m0 - phi_old / Ste;
}

NewtonResult solve_with_phi_old(double m0, double theta_old, double phi_old, double Ste,
                                double delta, double tol, int max_iter) {
  double theta_k = theta_old;
  for (int it = 1; it <= max_iter; ++it) {
    const double p = phi_delta(theta_k, delta);
    const double dp = phi_delta_prime(theta_k, delta);
    const double theta_next = (m0 + (phi_old + dp * theta_k - p) / Ste) / (1.0 + dp / Ste);
    const bool done = std::abs(theta_next - theta_k) < tol;
    theta_k = theta_next;
    if (done)
      return {theta_k, it, regularized_residual(theta_k, m0, phi_old, Ste, delta), false};
  }

  // F is monotone, so the root is unique; bisection on a bracket that always
  // contains it (phi_delta ranges over [0,1]).
  double lo = m0 - 1.0 / Ste - 1.0;
  double hi = m0 + 1.0 / Ste + 1.0;
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_residual(mid, m0, phi_old, Ste, delta) < 0)
      lo = mid;
    else
      hi = mid;
  }
  const double root = 0.5 * (lo + hi);
  return {root, max_iter, regularized_residual(root, m0, phi_old, Ste, delta), true};
}

} // namespace

NewtonResult solve_regularized_enthalpy(double m0, double theta_old, double Ste, double delta,
                                        double tol, int max_iter) {
  return solve_with_phi_old(m0, theta_old, phi_delta(theta_old, delta), Ste, delta, tol, max_iter);
}

double tau_from_timestep(double dt, double dx) {
  if (!(dt > 0) || !(dx > 0)) throw ConfigError("tau_from_timestep: requires dt > 0 and dx > 0");
  return 0.5 + 3.0 * dt / (dx * dx);
}

double timestep_from_tau(double tau, double dx) {
  if (!(tau > 0.5)) throw ConfigError("timestep_from_tau: requires tau > 1/2");
  if (!(dx > 0)) throw ConfigError("timestep_from_tau: requires dx > 0");
  return (tau - 0.5) * dx * dx / 3.0;
}

SolverState make_state(const LatticeDescriptor& lattice, int nx, int ny, const SchemeConfig& config,
                       std::span<const double> theta) {
  config.validate();
  SolverState s{DistributionField(lattice, nx, ny), {}, {}, 0, config};
  const long n = s.f.nodes();
  if (static_cast<long>(theta.size()) != n)
    throw ConfigError("make_state: temperature field size does not match the grid");
  s.theta.assign(theta.begin(), theta.end());

  const auto& w = lattice.weights;
  switch (config.method) {
  case Method::EEBM: {
    // M0(f) must be the enthalpy: rest population carries the latent heat.
    for (int i = 1; i < lattice.q; ++i) {
      auto p = s.f.plane(i);
      for (long j = 0; j < n; ++j) p[j] = w[i] * theta[j];
    }
    auto p0 = s.f.plane(0);
    for (long j = 0; j < n; ++j) {
      const double H = enthalpy_from_temperature(theta[j], config.Ste);
      p0[j] = H - (1.0 - w[0]) * theta[j];
    }
    break;
  }
  case Method::ILFBM:
    s.ell.resize(n);
    for (long j = 0; j < n; ++j) s.ell[j] = sharp_liquid_fraction(theta[j]);
    [[fallthrough]];
  case Method::IREBM:
    for (int i = 0; i < lattice.q; ++i) {
      auto p = s.f.plane(i);
      for (long j = 0; j < n; ++j) p[j] = w[i] * theta[j];
    }
    break;
  }
  return s;
}

Stepper::Stepper(const LatticeDescriptor& lattice, int nx, int ny, BoundarySpec boundaries)
    : boundaries_(std::move(boundaries)),
      omega_(lattice, nx, ny),
      omega_bgk_(lattice, nx, ny),
      scalar_a_(static_cast<size_t>(nx) * ny),
      scalar_b_(static_cast<size_t>(nx) * ny) {
  wrap_[0] = boundaries_.axis_periodic(0) ? AxisWrap::Periodic : AxisWrap::Open;
  wrap_[1] = lattice.dim == 2 && boundaries_.axis_periodic(1) ? AxisWrap::Periodic : AxisWrap::Open;
}

StepStats Stepper::step(SolverState& state) {
  state.config.validate();
  boundaries_.validate(state.f.lattice(), state.config.method);
  switch (state.config.method) {
  case Method::EEBM: return step_eebm(state);
  case Method::ILFBM: return step_ilfbm(state);
  case Method::IREBM: return step_irebm(state);
  }
  throw Error("Stepper::step: unknown method");
}

StepStats Stepper::step_eebm(SolverState& state) {
  const auto& lat = state.f.lattice();
  const auto& w = lat.weights;
  const long n = state.f.nodes();
  const double Ste = state.config.Ste;
  const double inv_tau = 1.0 / state.config.tau;

  std::vector<double>& H = scalar_a_;
  moment0_into(state.f, H);
  for (long j = 0; j < n; ++j) state.theta[j] = temperature_from_enthalpy(H[j], Ste);

  // BGK collision toward the enthalpy-carrying equilibrium.
  for (int i = 0; i < lat.q; ++i) {
    auto f = state.f.plane(i);
    auto o = omega_.plane(i);
    if (i == 0) {
      const double w0 = w[0];
      for (long j = 0; j < n; ++j) {
        const double feq = H[j] - (1.0 - w0) * state.theta[j];
        o[j] = f[j] - (f[j] - feq) * inv_tau;
      }
    } else {
      const double wi = w[i];
      for (long j = 0; j < n; ++j) {
        const double feq = wi * state.theta[j];
        o[j] = f[j] - (f[j] - feq) * inv_tau;
      }
    }
  }

  stream(omega_, state.f, wrap_);
  fill_boundaries(state.f, omega_, boundaries_, {Ste, state.config.delta, true});

  moment0_into(state.f, H);
  for (long j = 0; j < n; ++j) state.theta[j] = temperature_from_enthalpy(H[j], Ste);

  ++state.step;
  return {};
}

StepStats Stepper::step_ilfbm(SolverState& state) {
  const auto& lat = state.f.lattice();
  const auto& w = lat.weights;
  const long n = state.f.nodes();
  const double Ste = state.config.Ste;
  const double inv_tau = 1.0 / state.config.tau;

  if (static_cast<long>(state.ell.size()) != n)
    throw Error("step_ilfbm: state has no liquid-fraction field");

  // The BGK part of the collision does not change across inner iterations;
  // only the source coefficient does.
  for (int i = 0; i < lat.q; ++i) {
    auto f = state.f.plane(i);
    auto o = omega_bgk_.plane(i);
    const double wi = w[i];
    for (long j = 0; j < n; ++j) o[j] = f[j] - (f[j] - wi * state.theta[j]) * inv_tau;
  }

  const std::vector<double>& ell_time = state.ell; // converged value of the previous step
  std::vector<double>& ell_prev = scalar_a_;       // inner iterate
  std::vector<double>& H = scalar_b_;
  ell_prev.assign(ell_time.begin(), ell_time.end());

  StepStats stats;
  bool converged = false;
  double dmax = 0;
  long worst = 0;
  for (int k = 1; k <= state.config.inner_max_iter; ++k) {
    for (int i = 0; i < lat.q; ++i) {
      auto ob = omega_bgk_.plane(i);
      auto o = omega_.plane(i);
      const double c = w[i] / Ste;
      for (long j = 0; j < n; ++j) o[j] = ob[j] + c * (ell_time[j] - ell_prev[j]);
    }
    stream(omega_, state.f, wrap_);
    fill_boundaries(state.f, omega_, boundaries_, {Ste, state.config.delta, false});
    moment0_into(state.f, H);

    dmax = 0;
    for (long j = 0; j < n; ++j) {
      H[j] += ell_prev[j] / Ste;
      const double lk = liquid_fraction_from_enthalpy(H[j], Ste);
      const double d = std::abs(lk - ell_prev[j]);
      if (d > dmax) {
        dmax = d;
        worst = j;
      }
      ell_prev[j] = lk;
    }
    stats.inner_iterations = k;
    if (dmax < state.config.inner_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "ilfbm: inner iterations failed to converge at step " << state.step << " (node " << worst
       << ", max |dl| = " << dmax << " after " << state.config.inner_max_iter
       << " iterations, tol " << state.config.inner_tol << ")";
    throw ConvergenceError(os.str(), state.step, worst, dmax);
  }

  state.ell.swap(ell_prev);
  for (long j = 0; j < n; ++j) state.theta[j] = temperature_from_enthalpy(H[j], Ste);

  ++state.step;
  return stats;
}

StepStats Stepper::step_irebm(SolverState& state) {
  const auto& lat = state.f.lattice();
  const auto& w = lat.weights;
  const long n = state.f.nodes();
  const double Ste = state.config.Ste;
  const double delta = state.config.delta;
  const double inv_tau = 1.0 / state.config.tau;

  // (1 - 1/tau) f + (1/tau) f_eq, written in difference form so an
  // equilibrium state stays bit-exact.
  for (int i = 0; i < lat.q; ++i) {
    auto f = state.f.plane(i);
    auto o = omega_.plane(i);
    const double wi = w[i];
    for (long j = 0; j < n; ++j) o[j] = f[j] - (f[j] - wi * state.theta[j]) * inv_tau;
  }

  stream(omega_, state.f, wrap_); // state.f now holds q
  fill_boundaries(state.f, omega_, boundaries_, {Ste, delta, false});

  std::vector<double>& m0 = scalar_a_;
  moment0_into(state.f, m0);

  StepStats stats;
  stats.newton_nodes = n;
  for (long j = 0; j < n; ++j) {
    const double theta_old = state.theta[j];
    const double phi_old = phi_delta(theta_old, delta);
    const auto res = solve_with_phi_old(m0[j], theta_old, phi_old, Ste, delta,
                                        state.config.newton_tol, state.config.newton_max_iter);
    stats.newton_iterations += res.iterations;
    stats.newton_iter_max = std::max(stats.newton_iter_max, res.iterations);
    stats.newton_residual_max = std::max(stats.newton_residual_max, std::abs(res.residual));
    if (res.used_bisection && std::abs(res.residual) > 10 * state.config.newton_tol) {
      std::ostringstream os;
      os << "irebm: Newton solve failed at step " << state.step << ", node " << j
         << " (residual " << res.residual << " after bisection fallback)";
      throw ConvergenceError(os.str(), state.step, j, res.residual);
    }

    // Source term; the updated zeroth moment is theta by construction.
    const double c = (phi_old - phi_delta(res.theta, delta)) / Ste;
    for (int i = 0; i < lat.q; ++i) state.f(i, j) += w[i] * c;
    state.theta[j] = m0[j] + c;
  }

  // Contract checks on the q-closure boundaries, reported through the stats.
  const int nx = state.f.nx();
  const int ny = state.f.ny();
  auto check_face = [&](int face) {
    const auto& c = boundaries_.faces[face];
    if (c.type != FaceConditionType::DirichletOnQ && c.type != FaceConditionType::NeumannOnQ)
      return;
    const bool xface = face <= XMax;
    const int fixed = face == XMin ? 0 : face == XMax ? nx - 1 : face == YMin ? 0 : ny - 1;
    const int count = xface ? ny : nx;
    for (int k = 0; k < count; ++k) {
      const int ix = xface ? fixed : k;
      const int iy = xface ? k : fixed;
      if (lat.dim == 2 && (ix == 0 || ix == nx - 1) && (iy == 0 || iy == ny - 1))
        continue; // corners follow their own closure
      const long node = state.f.node_index(ix, iy);
      if (c.type == FaceConditionType::DirichletOnQ) {
        stats.dirichlet_deviation_max =
            std::max(stats.dirichlet_deviation_max, std::abs(state.theta[node] - c.value_next));
      } else {
        const int inx = face == XMin ? 1 : face == XMax ? nx - 2 : ix;
        const int iny = face == YMin ? 1 : face == YMax ? ny - 2 : iy;
        const long nb = state.f.node_index(inx, iny);
        stats.neumann_deviation_max =
            std::max(stats.neumann_deviation_max, std::abs(state.theta[node] - state.theta[nb]));
      }
    }
  };
  for (int face = 0; face < (lat.dim == 1 ? 2 : 4); ++face) check_face(face);

  ++state.step;
  return stats;
}

StepStats step_eebm(SolverState& state, const BoundarySpec& boundaries) {
  Stepper s(state.f.lattice(), state.f.nx(), state.f.ny(), boundaries);
  return s.step(state);
}

StepStats step_ilfbm(SolverState& state, const BoundarySpec& boundaries) {
  Stepper s(state.f.lattice(), state.f.nx(), state.f.ny(), boundaries);
  return s.step(state);
}

StepStats step_irebm(SolverState& state, const BoundarySpec& boundaries) {
  Stepper s(state.f.lattice(), state.f.nx(), state.f.ny(), boundaries);
  return s.step(state);
}

} // namespace slbm
